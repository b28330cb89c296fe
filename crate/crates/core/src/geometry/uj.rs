//! Gaps in the ordered root moduli, compared with the ray-parity prediction.
//!
//! `U_j` holds the trinomials whose `j`-th and `(j+1)`-th smallest root
//! moduli differ. For monic `h_b = z^(n+m) + b·z̄^m + c` the prediction is
//! `b ∉ R_even` when `n + j` is even and `b ∉ R_odd` when it is odd. For
//! `j = m` the gap is also predicted whenever some radius strictly between
//! `|z_m|` and `|z_{m+1}|` lies outside the triangle region.

use serde::{Deserialize, Serialize};

use super::rays::{on_ray, Parity};
use crate::error::{Error, Result};
use crate::radial::{triangle_profile_with, BRadii};
use crate::roots::{MultiplicityClass, RootList};
use crate::trinomial::{HarmonicTrinomial, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UjEntry {
    pub j: usize,
    pub member: bool,
    /// `None` where the prediction does not apply.
    pub predicted: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UjReport {
    /// Length of the ordering, multiple roots counted twice.
    pub root_count: usize,
    pub on_even_ray: bool,
    pub on_odd_ray: bool,
    pub entries: Vec<UjEntry>,
}

impl UjReport {
    pub fn members(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.member).map(|e| e.j).collect()
    }

    /// Entries where an applicable prediction disagrees with the oracle.
    pub fn mismatches(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.predicted.is_some_and(|p| p != e.member))
            .map(|e| e.j)
            .collect()
    }
}

/// Classifies `h` against every `U_j` using an already computed root list.
///
/// Multiple roots enter the ordering twice, so a double root never opens a
/// gap with itself. Predictions are withheld when that ordering would hold
/// more than `n + 3m` entries.
pub fn classify_uj(h: &HarmonicTrinomial, roots: &RootList, tol: &Tolerances) -> Result<UjReport> {
    let g = h.normalized();
    if g.c().norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("U_j classification needs c nonzero"));
    }
    let moduli: Vec<f64> = roots
        .roots
        .iter()
        .flat_map(|r| {
            let copies = if r.multiplicity_class == MultiplicityClass::Multiple { 2 } else { 1 };
            std::iter::repeat(r.modulus).take(copies)
        })
        .collect();
    let k = moduli.len();
    let member = |j: usize| moduli[j] - moduli[j - 1] > tol.modulus_group;
    let ill_posed = k > g.root_bound();
    let (n, m) = (g.n() as usize, g.m() as usize);

    let (on_even, on_odd) = if g.b().norm() == 0.0 {
        (false, false)
    } else {
        let t = on_ray(g.n(), g.m(), g.c(), g.b(), tol)?;
        match t.ray.map(|r| r.parity) {
            Some(Parity::Even) => (true, false),
            Some(Parity::Odd) => (false, true),
            None => (false, false),
        }
    };
    let gap = if g.b().norm() == 0.0 {
        None
    } else {
        match triangle_profile_with(&g, tol)?.b_radii {
            BRadii::Pair { inner, outer } => Some((inner, outer)),
            _ => None,
        }
    };

    let entries = (1..k)
        .map(|j| {
            let predicted = if ill_posed {
                None
            } else if g.b().norm() == 0.0 {
                Some(false)
            } else {
                let parity_rule = if (n + j) % 2 == 0 { !on_even } else { !on_odd };
                let escape = j == m
                    && gap.is_some_and(|(lo, hi)| lo < moduli[j] && hi > moduli[j - 1] && lo < hi);
                Some(parity_rule || escape)
            };
            UjEntry { j, member: member(j), predicted }
        })
        .collect();
    Ok(UjReport { root_count: k, on_even_ray: on_even, on_odd_ray: on_odd, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::find_all_roots;
    use num_complex::Complex64;

    fn report(b: f64, c: f64, n: u32, m: u32) -> UjReport {
        let h = HarmonicTrinomial::monic(Complex64::new(b, 0.0), Complex64::new(c, 0.0), n, m).unwrap();
        let tol = Tolerances::default();
        classify_uj(&h, &find_all_roots(&h, &tol).unwrap(), &tol).unwrap()
    }

    #[test]
    fn quintic_members_and_predictions() {
        let r = report(6.0, 1.0, 2, 3);
        assert_eq!(r.members(), vec![1, 3, 5, 7, 9]);
        assert!(!r.on_odd_ray);
        assert!(r.mismatches().is_empty(), "{r:?}");
    }

    #[test]
    fn no_conjugate_term_has_no_gaps() {
        let r = report(0.0, 1.0, 3, 2);
        assert!(r.members().is_empty());
        assert!(r.mismatches().is_empty());
    }

    #[test]
    fn quadratic_on_even_ray() {
        let r = report(-2.0, 1.0, 1, 1);
        assert!(r.on_even_ray);
        assert_eq!(r.entries[0], UjEntry { j: 1, member: false, predicted: Some(false) });
    }
}
