use thiserror::Error;

use super::search::SearchOptions;
use super::Verdict;
use crate::algebra::Element;
use crate::poly::{ClassPolynomial, Symbol};
use crate::spaces::Space;

#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    pub verdict: Verdict,
    pub base: Space,
    pub witness: Option<ClassPolynomial>,
    /// Value of the witness on the base.
    pub value: Option<Element>,
    /// Torus-degree-0 part of `value`.
    pub restriction: Option<Element>,
    /// Class substituted for each symbol.
    pub generators: Vec<(Symbol, Element)>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("obstructed certificate without witness, value or restriction")]
    Incomplete,
    #[error("witness uses {0}, which the generator report does not list")]
    UnlistedSymbol(Symbol),
    #[error("re-evaluated witness differs from the reported value")]
    ValueMismatch,
    #[error("witness value is zero")]
    ZeroValue,
    #[error("witness value does not vanish on the core")]
    NonzeroRestriction,
    #[error("reported restriction differs from the recomputed one")]
    RestrictionMismatch,
    #[error("base carries no torus bigrading")]
    NoBigrading,
}

impl ObstructionCertificate {
    pub(crate) fn obstructed(
        base: &Space,
        witness: ClassPolynomial,
        value: Element,
        restriction: Element,
        generators: Vec<(Symbol, Element)>,
    ) -> Self {
        ObstructionCertificate {
            verdict: Verdict::Obstructed,
            base: base.clone(),
            witness: Some(witness),
            value: Some(value),
            restriction: Some(restriction),
            generators,
            notes: Vec::new(),
        }
    }

    pub(crate) fn unobstructed(base: &Space, generators: Vec<(Symbol, Element)>, opts: &SearchOptions) -> Self {
        let mut notes = vec![
            "no polynomial in the searched classes is nonzero on the base yet zero on the core".to_string(),
            "not a curvature guarantee".to_string(),
        ];
        if opts.use_bundle_classes {
            notes.push("searched p_i of the bundle itself rather than of TB + bundle".into());
        }
        ObstructionCertificate {
            verdict: Verdict::NoObstructionFound,
            base: base.clone(),
            witness: None,
            value: None,
            restriction: None,
            generators,
            notes,
        }
    }

    pub(crate) fn with_verdict(base: &Space, verdict: Verdict, note: impl Into<String>) -> Self {
        ObstructionCertificate {
            verdict,
            base: base.clone(),
            witness: None,
            value: None,
            restriction: None,
            generators: Vec::new(),
            notes: vec![note.into()],
        }
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    /// Re-checks an `Obstructed` certificate from its own data: the witness is
    /// re-expanded term by term against the generator report, and the
    /// restriction is recomputed from the torus bigrading. Other verdicts
    /// carry no claim and always pass.
    pub fn verify(&self) -> Result<(), VerifyError> {
        if self.verdict != Verdict::Obstructed {
            return Ok(());
        }
        let (Some(w), Some(value), Some(restriction)) = (&self.witness, &self.value, &self.restriction) else {
            return Err(VerifyError::Incomplete);
        };
        let bigrading = self.base.torus_bigrading().ok_or(VerifyError::NoBigrading)?;
        let lookup = |s: Symbol| {
            self.generators.iter().find(|(t, _)| *t == s).map(|(_, x)| x).ok_or(VerifyError::UnlistedSymbol(s))
        };
        let mut total = self.base.zero();
        for (m, c) in w.terms() {
            let mut term = self.base.unit().scale(c);
            for (s, e) in m.factors() {
                let x = lookup(s)?;
                for _ in 0..e {
                    term = term.checked_mul(x).map_err(|_| VerifyError::ValueMismatch)?;
                }
            }
            total = total.checked_add(&term).map_err(|_| VerifyError::ValueMismatch)?;
        }
        if &total != value {
            return Err(VerifyError::ValueMismatch);
        }
        if total.is_zero() {
            return Err(VerifyError::ZeroValue);
        }
        let recomputed =
            Element::from_terms(self.base.algebra(), total.terms().filter(|(i, _)| bigrading[*i] == 0).map(|(i, c)| (i, c.clone())));
        if &recomputed != restriction {
            return Err(VerifyError::RestrictionMismatch);
        }
        if !recomputed.is_zero() {
            return Err(VerifyError::NonzeroRestriction);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn t2_cert() -> ObstructionCertificate {
        let t2 = Space::torus(2).unwrap();
        let top = t2.fundamental_class().unwrap();
        ObstructionCertificate::obstructed(
            &t2,
            ClassPolynomial::parse("2*E").unwrap(),
            top.scale(&q(2)),
            t2.zero(),
            vec![(Symbol::Euler, top)],
        )
    }

    #[test]
    fn accepts_consistent_certificate() {
        t2_cert().verify().unwrap();
    }

    #[test]
    fn rejects_tampering() {
        let mut c = t2_cert();
        c.value = Some(c.value.unwrap().scale(&q(3)));
        assert_eq!(c.verify(), Err(VerifyError::ValueMismatch));

        let mut c = t2_cert();
        c.generators.clear();
        assert_eq!(c.verify(), Err(VerifyError::UnlistedSymbol(Symbol::Euler)));

        let mut c = t2_cert();
        let unit = c.base.unit();
        c.generators = vec![(Symbol::Euler, unit.clone())];
        c.value = Some(unit.scale(&q(2)));
        assert_eq!(c.verify(), Err(VerifyError::RestrictionMismatch));
        c.restriction = c.value.clone();
        assert_eq!(c.verify(), Err(VerifyError::NonzeroRestriction));

        let mut c = t2_cert();
        c.witness = Some(ClassPolynomial::zero());
        c.value = Some(c.base.zero());
        assert_eq!(c.verify(), Err(VerifyError::ZeroValue));
    }
}
