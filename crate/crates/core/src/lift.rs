//! The three lifting transforms and admissible scale-value families.
//!
//! Lifting recalculates every entry of a base exponent matrix with circulant
//! size `L0` for a smaller target size `Lk`, preserving the mother matrix.
//! All arithmetic is exact integer arithmetic; floor division is computed as
//! `(Lk * e) / L0` on wide integers, never through floating point.

use std::fmt;
use std::str::FromStr;

use num::integer::gcd;

use crate::error::{Error, Result};
use crate::matrix::ExponentMatrix;

/// The supported entrywise lifting transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMethod {
    Floor,
    Modulo,
    FloorScaleModulo,
}

impl fmt::Display for LiftMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftMethod::Floor => write!(f, "floor"),
            LiftMethod::Modulo => write!(f, "modulo"),
            LiftMethod::FloorScaleModulo => write!(f, "fsm"),
        }
    }
}

impl FromStr for LiftMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "floor" => Ok(LiftMethod::Floor),
            "modulo" => Ok(LiftMethod::Modulo),
            "fsm" => Ok(LiftMethod::FloorScaleModulo),
            other => Err(format!("unknown lift method `{other}`")),
        }
    }
}

/// A lifting request: method, target circulant size, and (for
/// floor-scale-modulo) the scale value.
///
/// The scale is only required to satisfy `0 < r < L0`; coprimality with `L0`
/// is what the pairwise guarantees assume, but the transform itself is
/// defined without it, and scale search deliberately ranges over non-coprime
/// values too. `is_admissible` reports the coprimality status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftSpec {
    pub method: LiftMethod,
    pub target_size: i64,
    pub scale: Option<i64>,
}

impl LiftSpec {
    pub fn apply(&self, matrix: &ExponentMatrix) -> Result<ExponentMatrix> {
        match (self.method, self.scale) {
            (LiftMethod::Floor, _) => floor_lift(matrix, self.target_size),
            (LiftMethod::Modulo, _) => modulo_lift(matrix, self.target_size),
            (LiftMethod::FloorScaleModulo, Some(r)) => fsm_lift(matrix, self.target_size, r),
            (LiftMethod::FloorScaleModulo, None) => Err(Error::BadScale {
                scale: 0,
                base: matrix.circulant_size(),
            }),
        }
    }

    /// Whether the scale value is coprime with the base circulant size.
    pub fn is_admissible(&self, base_size: i64) -> bool {
        match (self.method, self.scale) {
            (LiftMethod::FloorScaleModulo, Some(r)) => gcd(r, base_size) == 1,
            _ => true,
        }
    }
}

fn check_target(matrix: &ExponentMatrix, target: i64) -> Result<()> {
    let base = matrix.circulant_size();
    if target < 1 || target > base {
        return Err(Error::BadTargetSize { target, base });
    }
    Ok(())
}

fn map_entries(
    matrix: &ExponentMatrix,
    target: i64,
    f: impl Fn(i64) -> i64,
) -> Result<ExponentMatrix> {
    let entries = matrix
        .entries()
        .iter()
        .map(|&e| if e == -1 { -1 } else { f(e) })
        .collect();
    ExponentMatrix::new(matrix.rows(), matrix.cols(), target, entries)
}

/// Floor lifting: `e -> floor(Lk * e / L0)`.
pub fn floor_lift(matrix: &ExponentMatrix, target: i64) -> Result<ExponentMatrix> {
    check_target(matrix, target)?;
    let base = matrix.circulant_size() as i128;
    map_entries(matrix, target, |e| {
        (target as i128 * e as i128 / base) as i64
    })
}

/// Modulo lifting: `e -> e mod Lk` (nonnegative residue).
pub fn modulo_lift(matrix: &ExponentMatrix, target: i64) -> Result<ExponentMatrix> {
    check_target(matrix, target)?;
    map_entries(matrix, target, |e| e.rem_euclid(target))
}

/// Floor scale modulo lifting: `e -> floor(Lk * ((r * e) mod L0) / L0)`.
///
/// Defined for any target in `1..=L0`; the pairwise cycle-elimination
/// guarantees of admissible scale families are established for the halving
/// case `Lk = L0 / 2`.
pub fn fsm_lift(matrix: &ExponentMatrix, target: i64, scale: i64) -> Result<ExponentMatrix> {
    check_target(matrix, target)?;
    let base = matrix.circulant_size();
    if scale <= 0 || scale >= base {
        return Err(Error::BadScale { scale, base });
    }
    let base = base as i128;
    map_entries(matrix, target, |e| {
        let scaled = (scale as i128 * e as i128).rem_euclid(base);
        (target as i128 * scaled / base) as i64
    })
}

/// How a scale family was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `L0 = 2q` with even `q > 2`: one representative kept from each pair
    /// `{r, r*(q+1) mod 2q}` of units, giving `phi(2q)/2` values.
    PairedEvenQ,
    /// `L0 = 2q` with odd `q > 2`: `r*(q+1)` is even and never a unit, so all
    /// `phi(2q)` units already satisfy the pairwise condition.
    FullUnitsOddQ,
    /// `L0` odd or `q <= 2`: the paired construction does not apply; the full
    /// unit set is returned without the pairwise guarantee.
    Unpaired,
}

/// A set of scale values for floor-scale-modulo lifting, pairwise satisfying
/// `r_i != r_j * (q+1) mod 2q` whenever the construction applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleFamily {
    base_size: i64,
    scales: Vec<i64>,
    kind: FamilyKind,
}

impl ScaleFamily {
    pub fn base_size(&self) -> i64 {
        self.base_size
    }

    /// The scale values, in increasing order.
    pub fn scales(&self) -> &[i64] {
        &self.scales
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }
}

/// Builds a maximal admissible scale family for base circulant size `L0`.
///
/// Representative choice for even `q`: the smaller member of each pair, so
/// the output is deterministic and ascending.
pub fn admissible_scales(base_size: i64) -> ScaleFamily {
    let units: Vec<i64> = (1..base_size).filter(|&r| gcd(r, base_size) == 1).collect();
    if base_size % 2 != 0 {
        return ScaleFamily {
            base_size,
            scales: units,
            kind: FamilyKind::Unpaired,
        };
    }
    let q = base_size / 2;
    if q <= 2 {
        return ScaleFamily {
            base_size,
            scales: units,
            kind: FamilyKind::Unpaired,
        };
    }
    if q % 2 != 0 {
        return ScaleFamily {
            base_size,
            scales: units,
            kind: FamilyKind::FullUnitsOddQ,
        };
    }
    let scales = units
        .into_iter()
        .filter(|&r| r <= (r * (q + 1)).rem_euclid(base_size))
        .collect();
    ScaleFamily {
        base_size,
        scales,
        kind: FamilyKind::PairedEvenQ,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(rows: usize, cols: usize, l: i64, entries: &[i64]) -> ExponentMatrix {
        ExponentMatrix::new(rows, cols, l, entries.to_vec()).unwrap()
    }

    #[test]
    fn floor_lift_examples() {
        let m = matrix(1, 2, 96, &[95, -1]);
        let lifted = floor_lift(&m, 24).unwrap();
        assert_eq!(lifted.entries(), &[23, -1]);
        assert_eq!(lifted.circulant_size(), 24);

        let same = floor_lift(&m, 96).unwrap();
        assert_eq!(same.entries(), m.entries());
    }

    #[test]
    fn modulo_lift_examples() {
        let m = matrix(1, 3, 96, &[95, -1, 7]);
        let lifted = modulo_lift(&m, 24).unwrap();
        assert_eq!(lifted.entries(), &[23, -1, 7]);
    }

    #[test]
    fn fsm_lift_examples() {
        let m = matrix(1, 2, 96, &[1, 0]);
        let lifted = fsm_lift(&m, 24, 95).unwrap();
        assert_eq!(lifted.entries(), &[23, 0]);
    }

    #[test]
    fn fsm_with_unit_scale_matches_floor() {
        let m = matrix(2, 2, 96, &[95, 7, -1, 48]);
        assert_eq!(
            fsm_lift(&m, 28, 1).unwrap(),
            floor_lift(&m, 28).unwrap()
        );
    }

    #[test]
    fn fsm_accepts_non_coprime_scale() {
        let m = matrix(1, 1, 96, &[3]);
        let lifted = fsm_lift(&m, 24, 34).unwrap();
        // (34*3) mod 96 = 6; floor(24*6/96) = 1
        assert_eq!(lifted.entries(), &[1]);

        let spec = LiftSpec {
            method: LiftMethod::FloorScaleModulo,
            target_size: 24,
            scale: Some(34),
        };
        assert!(!spec.is_admissible(96));
        assert_eq!(spec.apply(&m).unwrap(), lifted);
        let coprime = LiftSpec {
            scale: Some(95),
            ..spec
        };
        assert!(coprime.is_admissible(96));
    }

    #[test]
    fn lift_rejects_bad_parameters() {
        let m = matrix(1, 1, 96, &[3]);
        assert!(matches!(
            floor_lift(&m, 97),
            Err(Error::BadTargetSize { target: 97, base: 96 })
        ));
        assert!(matches!(
            floor_lift(&m, 0),
            Err(Error::BadTargetSize { target: 0, base: 96 })
        ));
        assert!(matches!(
            fsm_lift(&m, 24, 0),
            Err(Error::BadScale { scale: 0, base: 96 })
        ));
        assert!(matches!(
            fsm_lift(&m, 24, 96),
            Err(Error::BadScale { scale: 96, base: 96 })
        ));
    }

    #[test]
    fn admissible_scales_for_even_q() {
        let family = admissible_scales(8);
        assert_eq!(family.scales(), &[1, 3]);
        assert_eq!(family.kind(), FamilyKind::PairedEvenQ);
    }

    #[test]
    fn admissible_scales_for_odd_q() {
        let family = admissible_scales(6);
        assert_eq!(family.scales(), &[1, 5]);
        assert_eq!(family.kind(), FamilyKind::FullUnitsOddQ);
    }

    #[test]
    fn admissible_scales_unpaired_cases() {
        assert_eq!(admissible_scales(9).kind(), FamilyKind::Unpaired);
        assert_eq!(admissible_scales(4).kind(), FamilyKind::Unpaired);
    }

    #[test]
    fn family_satisfies_pairwise_conditions() {
        for q in 3i64..=12 {
            let base = 2 * q;
            let family = admissible_scales(base);
            let phi = (1..base).filter(|&r| gcd(r, base) == 1).count();
            if q % 2 == 0 {
                assert_eq!(family.len(), phi / 2, "q={q}");
            } else {
                assert_eq!(family.len(), phi, "q={q}");
            }
            for (i, &r1) in family.scales().iter().enumerate() {
                assert_eq!(gcd(r1, base), 1);
                for &r2 in &family.scales()[i + 1..] {
                    assert_ne!(r1.rem_euclid(base), (r2 * (q + 1)).rem_euclid(base), "q={q}");
                    assert_ne!(r2.rem_euclid(base), (r1 * (q + 1)).rem_euclid(base), "q={q}");
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (ExponentMatrix, i64, i64)> {
        (1usize..4, 1usize..4, 2i64..40).prop_flat_map(|(m, n, l)| {
            (
                proptest::collection::vec(-1i64..l, m * n),
                1i64..=l,
                1i64..l,
            )
                .prop_map(move |(entries, target, scale)| {
                    (ExponentMatrix::new(m, n, l, entries).unwrap(), target, scale)
                })
        })
    }

    proptest! {
        #[test]
        fn lifts_preserve_mother_and_range((m, target, scale) in arb_matrix()) {
            for lifted in [
                floor_lift(&m, target).unwrap(),
                modulo_lift(&m, target).unwrap(),
                fsm_lift(&m, target, scale).unwrap(),
            ] {
                prop_assert_eq!(lifted.mother(), m.mother());
                prop_assert_eq!(lifted.circulant_size(), target);
                for &e in lifted.entries() {
                    prop_assert!((-1..target).contains(&e));
                }
            }
        }

        #[test]
        fn fsm_with_scale_one_equals_floor((m, target, _) in arb_matrix()) {
            prop_assert_eq!(fsm_lift(&m, target, 1).unwrap(), floor_lift(&m, target).unwrap());
        }
    }
}
