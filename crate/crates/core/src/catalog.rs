//! Named worked data.

use serde::Serialize;

use crate::input::{DatumSpec, InputError};
use crate::metalattice::MetaplecticDatum;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub datum: DatumSpec,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<MetaplecticDatum, InputError> {
        self.datum.validate()
    }
}

fn spec(rank: usize, coroots: &[&[i64]], roots: &[&[i64]], b: &[&[i64]], n: i64, q: u64) -> DatumSpec {
    let rows = |m: &[&[i64]]| m.iter().map(|r| r.to_vec()).collect();
    DatumSpec { rank, simple_coroots: rows(coroots), simple_roots: rows(roots), b: rows(b), n, q: Some(q) }
}

fn sl2(q_alpha: i64, n: i64, q: u64) -> DatumSpec {
    spec(1, &[&[1]], &[&[2]], &[&[2 * q_alpha]], n, q)
}

fn sl3(n: i64, q: u64) -> DatumSpec {
    spec(2, &[&[1, 0], &[0, 1]], &[&[2, -1], &[-1, 2]], &[&[2, -1], &[-1, 2]], n, q)
}

fn sp4(n: i64, q: u64) -> DatumSpec {
    spec(2, &[&[1, 0], &[0, 1]], &[&[2, -1], &[-2, 2]], &[&[4, -2], &[-2, 2]], n, q)
}

/// All entries, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let e = |name, description, datum| CatalogEntry { name, description, datum };
    vec![
        e("sl2-n1", "linear SL(2), q = 7", sl2(1, 1, 7)),
        e("sl2-n2", "double cover of SL(2), Q = 1, q = 5", sl2(1, 2, 5)),
        e("sl2-n3", "triple cover of SL(2), Q = 1, q = 7", sl2(1, 3, 7)),
        e("sl2-n4", "4-fold cover of SL(2), Q = 1, q = 17", sl2(1, 4, 17)),
        e("sl2-n6", "6-fold cover of SL(2), Q = 1, q = 13", sl2(1, 6, 13)),
        e("sl2-n6-q3", "6-fold cover of SL(2), Q = 3, q = 13", sl2(3, 6, 13)),
        e("sl2-n9-q3", "9-fold cover of SL(2), Q = 3, q = 19", sl2(3, 9, 19)),
        e("pgl2-n2", "double cover of PGL(2), q = 5", spec(1, &[&[2]], &[&[1]], &[&[2]], 2, 5)),
        e("pgl2-n3", "triple cover of PGL(2), q = 7", spec(1, &[&[2]], &[&[1]], &[&[2]], 3, 7)),
        e("sl3-n1", "linear SL(3), q = 7", sl3(1, 7)),
        e("sl3-n2", "double cover of SL(3), q = 5", sl3(2, 5)),
        e("sl3-n3", "triple cover of SL(3), q = 7", sl3(3, 7)),
        e("sp4-n2", "double cover of Sp(4), q = 5", sp4(2, 5)),
        e("sp4-n4", "4-fold cover of Sp(4), q = 17", sp4(4, 17)),
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry, InputError> {
    catalog().into_iter().find(|e| e.name == name).ok_or_else(|| InputError::UnknownCatalog(name.to_string()))
}
