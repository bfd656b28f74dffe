use serde::{Deserialize, Serialize};

use super::PbwAlgebra;
use crate::abelian;
use crate::error::{Error, Result};
use crate::isotest;
use crate::liealg::AlgebraPresentation;

/// Fields recorded as dimension data only, without a construction showing
/// they are determined by `u(L)`.
pub const PARTIAL_INVARIANTS: [&str; 2] = ["dn_mod_d2n1_dims", "dn_mod_dn2_dims"];

/// Invariants of `u(L)` used to tell algebras apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFingerprint {
    pub field: String,
    /// `dim ω^k` for `k ≥ 1`, ending with the first zero.
    pub omega_dims: Vec<usize>,
    /// `dim D_n / D_{n+1}` for `n ≥ 1` while `D_n ≠ 0`.
    pub dim_quotients: Vec<usize>,
    pub jl_dim: usize,
    /// Exponent partition of `L/L'_p`, largest first.
    pub l_mod_lp_exponents: Vec<u32>,
    pub main_quotient_dim: usize,
    pub main_quotient_class_id: String,
    pub gr_class_id: String,
    pub nilpotency_index_omega: usize,
    /// `dim D_n / D_{2n+1}`.
    pub dn_mod_d2n1_dims: Vec<usize>,
    /// `dim D_n / D_{n+2}`.
    pub dn_mod_dn2_dims: Vec<usize>,
}

impl InvariantFingerprint {
    /// Names of the fields where `self` and `other` disagree.
    pub fn differences(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        macro_rules! cmp {
            ($($f:ident),*) => {$(
                if self.$f != other.$f {
                    out.push(stringify!($f));
                }
            )*};
        }
        cmp!(
            field,
            omega_dims,
            dim_quotients,
            jl_dim,
            l_mod_lp_exponents,
            main_quotient_dim,
            main_quotient_class_id,
            gr_class_id,
            nilpotency_index_omega,
            dn_mod_d2n1_dims,
            dn_mod_dn2_dims
        );
        out
    }
}

/// Compute the fingerprint of a p-nilpotent algebra.
pub fn fingerprint(p: &AlgebraPresentation) -> Result<InvariantFingerprint> {
    if !p.is_p_nilpotent() {
        return Err(Error::NotPNilpotent);
    }
    let u = PbwAlgebra::new(p)?;
    let omega = u.augmentation_series(None);
    if !omega.last().is_some_and(|s| s.is_zero()) {
        return Err(Error::NotPNilpotent);
    }
    let omega_dims: Vec<usize> = omega.iter().map(|s| s.dim()).collect();
    let d: Vec<usize> = omega.iter().map(|s| u.oracle_from(s).dim()).collect();
    let d_at = |n: usize| d.get(n - 1).copied().unwrap_or(0);
    let top = d.iter().take_while(|&&x| x > 0).count();
    let dim_quotients = (1..=top).map(|n| d_at(n) - d_at(n + 1)).collect();
    let dn_mod_d2n1_dims = (1..=top).map(|n| d_at(n) - d_at(2 * n + 1)).collect();
    let dn_mod_dn2_dims = (1..=top).map(|n| d_at(n) - d_at(n + 2)).collect();

    let lp_quotient = p.quotient_by(&p.derived_p())?;
    let mut l_mod_lp_exponents = abelian::cyclic_decomposition(&lp_quotient.algebra)?.exponents;
    l_mod_lp_exponents.sort_unstable_by(|a, b| b.cmp(a));

    let main = p.quotient_by(&p.main_quotient_ideal())?;
    let graded = p.graded()?;

    Ok(InvariantFingerprint {
        field: isotest::field_tag(p.field()),
        nilpotency_index_omega: omega.len(),
        omega_dims,
        dim_quotients,
        jl_dim: u.jl_subspace()?.dim(),
        l_mod_lp_exponents,
        main_quotient_dim: main.algebra.dim(),
        main_quotient_class_id: isotest::class_id(&main.algebra),
        gr_class_id: isotest::graded_class_id(&graded),
        dn_mod_d2n1_dims,
        dn_mod_dn2_dims,
    })
}
