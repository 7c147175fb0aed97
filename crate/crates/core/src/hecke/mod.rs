//! The symbolic layer: the group algebra `C[Λ]` with its Weyl action and
//! orbit sums, the Iwahori–Hecke algebra on `W_a = Λ ⋊ W`, and the
//! Gindikin–Karpelevich factors.

mod affine;
mod algebra;
mod group_algebra;
mod presentation;

pub use affine::{AffineWeylElement, AffineWeylGroup};
pub use algebra::{HeckeAlgebra, HeckeElement};
pub use group_algebra::{
    gk_coefficient, is_regular, orbit_sum_multiply, renorm_cocycle_check, GkCoefficient, GroupAlgebraElement, OrbitProduct,
    RenormReport,
};
pub use presentation::{
    dual_isomorphism, structure_table, verify_presentation, DualIsomorphismReport, PresentationReport, RelationCheck,
    StructureEntry,
};

use thiserror::Error;

use crate::metalattice::MetaError;
use crate::rootdata::RootDataError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("{0:?} is not in the lattice Lambda")]
    NotInLambda(Vec<i64>),
    #[error("{0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("element {0} does not belong to this datum's affine Weyl group")]
    DatumMismatch(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Meta(#[from] MetaError),
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::metalattice::MetaplecticDatum;
    use crate::rootdata::{build_root_datum, BilinearForm};

    pub fn sl2(q: i64, n: i64) -> MetaplecticDatum {
        let root = build_root_datum(1, vec![vec![1]], vec![vec![2]]).unwrap();
        MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2 * q]]), n).unwrap()
    }

    /// `SL_3` with the form `B(α_i, α_i) = 2Q`, `B(α_1, α_2) = −Q`.
    pub fn sl3(q: i64, n: i64) -> MetaplecticDatum {
        let root = build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-1, 2]]).unwrap();
        MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2 * q, -q], vec![-q, 2 * q]]), n).unwrap()
    }
}
