//! Interchangeable procedures deciding representability by sets, selectable
//! by name.

use std::fmt;

use crate::algebra::{PartialAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::games::{GameSolver, Rounds};
use crate::meet::{birkhoff_representation, check_axioms, SuiteId};
use crate::repsearch::{
    build_representation, check_point_type, decide_representable_with, decide_via_zero_reduction, requirements,
    strip_zero, RepCertificate, SearchConfig, SearchOutcome, SetRepresentation,
};

/// The answer of a decider.
#[derive(Debug, Clone)]
pub enum Verdict {
    Representable {
        certificate: Option<RepCertificate>,
        representation: Option<SetRepresentation>,
    },
    NotRepresentable {
        reason: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn is_representable(&self) -> bool {
        matches!(self, Verdict::Representable { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    fn from_search(alg: &PartialAlgebra, out: SearchOutcome) -> Result<Verdict> {
        Ok(match out {
            SearchOutcome::Certified(cert) => Verdict::Representable {
                representation: Some(build_representation(alg, &cert)?),
                certificate: Some(cert),
            },
            SearchOutcome::Refuted(r) => Verdict::NotRepresentable { reason: r.reason },
            SearchOutcome::Inconclusive { nodes } => Verdict::Inconclusive {
                reason: format!("search stopped after {nodes} nodes"),
            },
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Representable { .. } => f.write_str("representable"),
            Verdict::NotRepresentable { reason } => write!(f, "not representable: {reason}"),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// A procedure deciding representability for some class of algebras.
pub trait Decider: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// `Err` explains why the decider does not apply to the algebra.
    fn check_applies(&self, alg: &PartialAlgebra) -> Result<()>;
    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict>;
}

/// Backtracking search for point types.
pub struct SearchDecider {
    pub config: SearchConfig,
}

impl Decider for SearchDecider {
    fn name(&self) -> &'static str {
        "search"
    }

    fn description(&self) -> &'static str {
        "backtracking search for point types witnessing every required pair"
    }

    fn check_applies(&self, _: &PartialAlgebra) -> Result<()> {
        Ok(())
    }

    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict> {
        Verdict::from_search(alg, decide_representable_with(alg, &self.config))
    }
}

/// Search on the zero-free reduct plus the zero law.
pub struct ZeroReductionDecider {
    pub config: SearchConfig,
}

impl Decider for ZeroReductionDecider {
    fn name(&self) -> &'static str {
        "zero-reduction"
    }

    fn description(&self) -> &'static str {
        "search on the reduct without zero, then the zero law"
    }

    fn check_applies(&self, alg: &PartialAlgebra) -> Result<()> {
        strip_zero(alg).map(|_| ())
    }

    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict> {
        Verdict::from_search(alg, decide_via_zero_reduction(alg, &self.config)?)
    }
}

/// Every subset of the carrier tried as a point.
pub struct ExhaustiveDecider {
    pub max_elements: usize,
}

impl Decider for ExhaustiveDecider {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn description(&self) -> &'static str {
        "tries every subset of the carrier as a point type"
    }

    fn check_applies(&self, alg: &PartialAlgebra) -> Result<()> {
        if alg.len() > self.max_elements {
            return Err(Error::TooLarge {
                what: "carrier for exhaustive point enumeration",
                size: alg.len(),
                cap: self.max_elements,
            });
        }
        Ok(())
    }

    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict> {
        self.check_applies(alg)?;
        let n = alg.len();
        let points: Vec<_> = (0u64..1 << n)
            .map(|mask| crate::repsearch::subset(alg, (0..n).filter(|&i| mask >> i & 1 == 1)))
            .filter(|u| check_point_type(alg, u).is_ok())
            .collect();
        let mut cert = RepCertificate::default();
        for req in requirements(alg) {
            let Some(u) = points.iter().find(|u| req.satisfied_by(u)) else {
                return Ok(Verdict::NotRepresentable {
                    reason: req.describe(alg),
                });
            };
            let idx = match cert.point_types.iter().position(|p| p == u) {
                Some(i) => i,
                None => {
                    cert.point_types.push(u.clone());
                    cert.point_types.len() - 1
                }
            };
            cert.record(req, idx);
        }
        Ok(Verdict::Representable {
            representation: Some(build_representation(alg, &cert)?),
            certificate: Some(cert),
        })
    }
}

/// The unbounded game on the join reduct, plus the zero law.
pub struct GameDecider {
    pub position_cap: usize,
}

impl GameDecider {
    fn allowed() -> Signature {
        Signature::JOIN.with(Symbol::Zero).with(Symbol::Comp)
    }
}

impl Decider for GameDecider {
    fn name(&self) -> &'static str {
        "game"
    }

    fn description(&self) -> &'static str {
        "decides the unbounded representation game on the join reduct"
    }

    fn check_applies(&self, alg: &PartialAlgebra) -> Result<()> {
        let sig = alg.signature();
        let extra = sig.symbols().into_iter().find(|s| !Self::allowed().contains(*s));
        if !sig.has_join || extra.is_some() {
            return Err(Error::SignatureMismatch(format!(
                "the game needs join and allows only zero and composition besides, the algebra has {sig}"
            )));
        }
        Ok(())
    }

    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict> {
        self.check_applies(alg)?;
        let reduct = if alg.has(Symbol::Zero) {
            let red = strip_zero(alg)?;
            if !red.zero_law {
                return Ok(Verdict::NotRepresentable {
                    reason: format!("zero law fails: {}", red.law),
                });
            }
            red.reduct
        } else {
            alg.reduct(Signature::JOIN)?
        };
        let mut solver = GameSolver::with_cap(&reduct, self.position_cap)?;
        match solver.exists_wins(Rounds::Omega) {
            Ok(true) => Ok(Verdict::Representable {
                certificate: None,
                representation: None,
            }),
            Ok(false) => Ok(Verdict::NotRepresentable {
                reason: "∀ has a winning strategy in the unbounded game".into(),
            }),
            Err(Error::ResourceCap { what, cap }) => Ok(Verdict::Inconclusive {
                reason: format!("{what} exceeded the cap of {cap}"),
            }),
            Err(e) => Err(e),
        }
    }
}

/// Axiom check and prime-filter construction for signatures with meet.
pub struct BirkhoffDecider;

impl Decider for BirkhoffDecider {
    fn name(&self) -> &'static str {
        "birkhoff"
    }

    fn description(&self) -> &'static str {
        "checks the axiom suite of a meet signature and builds the prime-filter representation"
    }

    fn check_applies(&self, alg: &PartialAlgebra) -> Result<()> {
        match SuiteId::for_signature(alg.signature()) {
            Some(_) => Ok(()),
            None => Err(Error::SignatureMismatch(format!(
                "no axiom suite for signature {}",
                alg.signature()
            ))),
        }
    }

    fn decide(&self, alg: &PartialAlgebra) -> Result<Verdict> {
        self.check_applies(alg)?;
        let id = SuiteId::for_signature(alg.signature()).expect("checked");
        if let Some(v) = check_axioms(alg, id)?.into_iter().next() {
            return Ok(Verdict::NotRepresentable {
                reason: format!("axiom fails: {v}"),
            });
        }
        Ok(Verdict::Representable {
            certificate: None,
            representation: Some(birkhoff_representation(alg, id)?),
        })
    }
}

/// Deciders selectable by name, in registration order.
pub struct DeciderRegistry {
    deciders: Vec<Box<dyn Decider>>,
}

impl Default for DeciderRegistry {
    fn default() -> Self {
        let mut r = DeciderRegistry { deciders: Vec::new() };
        r.register(Box::new(SearchDecider {
            config: SearchConfig::default(),
        }));
        r.register(Box::new(ZeroReductionDecider {
            config: SearchConfig::default(),
        }));
        r.register(Box::new(ExhaustiveDecider { max_elements: 16 }));
        r.register(Box::new(GameDecider {
            position_cap: crate::games::DEFAULT_POSITION_CAP,
        }));
        r.register(Box::new(BirkhoffDecider));
        r
    }
}

impl DeciderRegistry {
    /// The default deciders with the given search node cap.
    pub fn with_node_cap(node_cap: u64) -> Self {
        let mut r = DeciderRegistry::default();
        let config = SearchConfig { node_cap };
        r.replace(Box::new(SearchDecider { config }));
        r.replace(Box::new(ZeroReductionDecider { config }));
        r
    }

    pub fn register(&mut self, d: Box<dyn Decider>) {
        self.deciders.push(d);
    }

    /// Swaps in a decider for the one with the same name, or appends it.
    pub fn replace(&mut self, d: Box<dyn Decider>) {
        match self.deciders.iter().position(|x| x.name() == d.name()) {
            Some(i) => self.deciders[i] = d,
            None => self.deciders.push(d),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Decider> {
        self.deciders.iter().find(|d| d.name() == name).map(|d| d.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.deciders.iter().map(|d| d.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Decider> {
        self.deciders.iter().map(|d| d.as_ref())
    }

    /// Runs the named decider after checking that it applies.
    pub fn decide(&self, name: &str, alg: &PartialAlgebra) -> Result<Verdict> {
        let d = self.get(name).ok_or_else(|| {
            Error::precondition(format!("unknown decider `{name}` (known: {})", self.names().join(", ")))
        })?;
        d.check_applies(alg)?;
        d.decide(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power_set, power_set_without};
    use crate::counterexamples::gen_a;
    use crate::repsearch::verify_representation;

    #[test]
    fn deciders_agree_on_small_examples() {
        let reg = DeciderRegistry::default();
        let cases = [
            (power_set(3, Signature::JOIN).unwrap(), true),
            (power_set_without(3, &[0b111], Signature::JOIN).unwrap(), false),
            (power_set(2, Signature::JOIN.with(Symbol::Zero)).unwrap(), true),
            (gen_a(3, 4).unwrap(), false),
        ];
        for (alg, expected) in &cases {
            for d in reg.iter() {
                if d.check_applies(alg).is_err() {
                    continue;
                }
                let v = d.decide(alg).unwrap();
                assert_eq!(v.is_representable(), *expected, "{} on {alg:?}: {v}", d.name());
                if let Verdict::Representable {
                    representation: Some(rep),
                    ..
                } = &v
                {
                    assert!(verify_representation(alg, rep).is_ok(), "{}", d.name());
                }
            }
        }
    }

    #[test]
    fn registry_lookup_and_applicability() {
        let reg = DeciderRegistry::with_node_cap(10);
        assert_eq!(reg.names(), ["search", "zero-reduction", "exhaustive", "game", "birkhoff"]);
        let minus = power_set(2, Signature::MINUS).unwrap();
        assert!(reg.decide("game", &minus).is_err());
        assert!(reg.decide("birkhoff", &minus).is_err());
        assert!(reg.decide("zero-reduction", &minus).is_err());
        assert!(reg.decide("nonesuch", &minus).is_err());
        assert!(reg.decide("search", &minus).unwrap().is_representable());
    }
}
