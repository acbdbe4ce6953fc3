use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{CheckConfig, CheckReport, Mode, ReportBuilder, Witness};

use super::{first_triple, Element, FiniteLoop};

/// A loop certified commutative and Moufang by an exhaustive scan.
///
/// Subloops and quotients of a CML are CMLs, so they are wrapped without
/// rescanning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cml(FiniteLoop);

impl Cml {
    pub fn certify(l: FiniteLoop) -> Result<Cml> {
        let report = l.is_cml();
        if report.passed() {
            Ok(Cml(l))
        } else {
            Err(Error::NotCml {
                witness: report
                    .elements_witness()
                    .map(<[usize]>::to_vec)
                    .unwrap_or_default(),
                reason: report.note.unwrap_or_default(),
            })
        }
    }

    pub(crate) fn assume(l: FiniteLoop) -> Cml {
        Cml(l)
    }

    pub fn as_loop(&self) -> &FiniteLoop {
        &self.0
    }

    pub fn into_loop(self) -> FiniteLoop {
        self.0
    }
}

impl std::ops::Deref for Cml {
    type Target = FiniteLoop;

    fn deref(&self) -> &FiniteLoop {
        &self.0
    }
}

/// `(x,y,z) = (y⁻¹,x,z) = (y,x,z)⁻¹ = (y,z,x)` at one triple.
pub fn identity3_holds_at(l: &FiniteLoop, x: Element, y: Element, z: Element) -> bool {
    let a = l.associator(x, y, z);
    a == l.associator(l.inverse(y), x, z)
        && a == l.inverse(l.associator(y, x, z))
        && a == l.associator(y, z, x)
}

/// `(xy,u,v) = (x,u,v)·((x,u,v),x,y)·(y,u,v)·((y,u,v),y,x)`, the right side
/// multiplied left to right.
pub fn identity2_holds_at(l: &FiniteLoop, x: Element, y: Element, u: Element, v: Element) -> bool {
    let lhs = l.associator(l.mul(x, y), u, v);
    let a = l.associator(x, u, v);
    let b = l.associator(y, u, v);
    let rhs = l.mul(
        l.mul(l.mul(a, l.associator(a, x, y)), b),
        l.associator(b, y, x),
    );
    lhs == rhs
}

pub fn check_identity3(l: &Cml) -> CheckReport {
    let rb = ReportBuilder::new("eq3.associator-symmetries");
    let n = l.order();
    let w = first_triple(n, |x, y, z| !identity3_holds_at(l, x, y, z));
    rb.elements((n * n * n) as u64, w)
}

/// Exhaustive over all quadruples when `n⁴ ≤ budget`, otherwise seeded sampling.
pub fn check_identity2(l: &Cml, cfg: &CheckConfig) -> CheckReport {
    let n = l.order();
    let total = (n as u128).pow(4);
    if total <= cfg.budget as u128 {
        let rb = ReportBuilder::new("eq2.associator-expansion");
        let w = (0..n * n).into_par_iter().find_map_first(|xy| {
            let (x, y) = (xy / n, xy % n);
            for u in 0..n {
                for v in 0..n {
                    if !identity2_holds_at(l, x, y, u, v) {
                        return Some(vec![x, y, u, v]);
                    }
                }
            }
            None
        });
        rb.elements(total as u64, w)
    } else {
        let rb = ReportBuilder::new("eq2.associator-expansion").mode(Mode::Sampled {
            seed: cfg.seed,
            count: cfg.samples,
        });
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut witness = None;
        let mut checked = 0;
        for _ in 0..cfg.samples {
            let q: [Element; 4] = std::array::from_fn(|_| rng.gen_range(0..n));
            checked += 1;
            if !identity2_holds_at(l, q[0], q[1], q[2], q[3]) {
                witness = Some(Witness::Elements(q.to_vec()));
                break;
            }
        }
        rb.finish(checked, witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteLoop {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteLoop::from_rows(&rows).unwrap()
    }

    #[test]
    fn abelian_groups_satisfy_both_identities() {
        let l = Cml::certify(cyclic(6)).unwrap();
        assert!(check_identity3(&l).passed());
        let r = check_identity2(&l, &CheckConfig::default());
        assert!(r.passed());
        assert_eq!(r.mode, Mode::Exhaustive);
        assert_eq!(r.checked, 6u64.pow(4));
    }

    #[test]
    fn sampling_kicks_in_above_budget() {
        let l = Cml::certify(cyclic(7)).unwrap();
        let cfg = CheckConfig {
            budget: 100,
            samples: 500,
            seed: 9,
            ..CheckConfig::default()
        };
        let r = check_identity2(&l, &cfg);
        assert!(r.passed());
        assert_eq!(
            r.mode,
            Mode::Sampled {
                seed: 9,
                count: 500
            }
        );
        assert_eq!(r.checked, 500);
    }

    #[test]
    fn certify_rejects_non_moufang() {
        // Commutative, but x²·yz = xy·xz fails.
        let rows = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 0, 3, 2, 5, 4],
            vec![2, 3, 4, 5, 0, 1],
            vec![3, 2, 5, 4, 1, 0],
            vec![4, 5, 0, 1, 3, 2],
            vec![5, 4, 1, 0, 2, 3],
        ];
        let l = FiniteLoop::from_rows(&rows).unwrap();
        assert!(l.is_commutative().passed());
        let r = l.is_cml();
        assert_eq!(r.note.as_deref(), Some("Moufang identity fails"));
        let w = r.elements_witness().unwrap();
        assert!(!l.moufang_at(w[0], w[1], w[2]));
        assert!(matches!(Cml::certify(l), Err(Error::NotCml { .. })));
    }
}
