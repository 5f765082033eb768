//! Chow ring of `P^n`, Chern classes and characters, K-classes from
//! Hilbert polynomials, and torsion filtrations of graded modules.

pub mod bezout;
pub mod classes;
pub mod torsion;

pub use bezout::{bezout_h2, BezoutCertificate};
pub use classes::{
    c_from_ch, ch_from_c, euler_characteristic, extended_gcd, hilbert_value, todd_class, ChernVector, ChowClass, KClass,
};
pub use torsion::{
    filtration_report, torsion_split, torsion_split_seeded, FiltrationQuotient, FiltrationReport, TorsionSplit,
};

use crate::error::Result;
use crate::exact::Field;
use crate::schemes::SubschemeData;

/// `K`-class of `O_Z` read from the Hilbert polynomial of `R/I_Z`.
pub fn structure_sheaf_kclass<F: Field>(z: &SubschemeData<F>) -> KClass {
    KClass::from_hilbert_polynomial(&z.hilbert_series().polynomial())
}

/// `ch(I_Z) = 1 - ch(O_Z)`.
pub fn ideal_sheaf_character<F: Field>(z: &SubschemeData<F>) -> ChowClass {
    ChowClass::one(z.ambient_dim()).sub(&structure_sheaf_kclass(z).ch())
}

/// Rank one with Chern classes recovered from `ch(I_Z)`.
pub fn ideal_sheaf_chern<F: Field>(z: &SubschemeData<F>) -> Result<ChernVector> {
    c_from_ch(&ideal_sheaf_character(z))
}

/// One term `V_i ⊗ O(-M_i)` of a resolution, with `M_i` in units of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainTerm {
    pub dim_v: i64,
    pub twist: i64,
}

/// `ch(I_Z) - [(-1)^(e+1) ch(E) + sum_i (-1)^i dim V_i ch(O(-M_i))]` for a
/// resolution `0 → E → P_e → … → P_0 → I_Z → 0`.
pub fn alternating_character_residual(ch_ideal: &ChowClass, terms: &[ChainTerm], ch_terminal: &ChowClass) -> ChowClass {
    let n = ch_ideal.n();
    let e = terms.len() as i64 - 1;
    let mut rhs = ch_terminal.scale_int(if (e + 1) % 2 == 0 { 1 } else { -1 });
    for (i, t) in terms.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        rhs = rhs.add(&ChowClass::exp_line(n, -t.twist).scale_int(sign * t.dim_v));
    }
    ch_ideal.sub(&rhs).with_polarization(ch_ideal.polarization())
}
