use super::PbwAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{unit_vector, FieldElement, Matrix, Subspace, Vector};

/// Outcome of the decomposition identities for the E-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub e_dim: usize,
    pub jl_dim: usize,
    /// `ω(L) = L + E`.
    pub omega_is_l_plus_e: bool,
    /// `(L + J_L) ∩ E = J_L`.
    pub l_plus_jl_meet_e_is_jl: bool,
    /// `E ∩ L'_p u(L) = J_L`.
    pub e_meet_lp_u_is_jl: bool,
}

impl DecompositionCheck {
    pub fn passed(&self) -> bool {
        self.omega_is_l_plus_e && self.l_plus_jl_meet_e_is_jl && self.e_meet_lp_u_is_jl
    }
}

/// Violations of `[E, ω] ⊆ J_L` and `u^p ∈ E`, each with a witness.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CentralityReport {
    pub checked_commutators: usize,
    pub checked_powers: usize,
    pub violations: Vec<String>,
}

/// Dimension of `ω^k` against the number of weighted monomials of weight
/// at least `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCount {
    pub k: usize,
    pub omega_dim: usize,
    pub monomials: usize,
    /// All those monomials lie in `ω^k` and are independent.
    pub basis: bool,
}

impl PbwAlgebra {
    /// Format an element of `u(L)` as a sum of PBW monomials.
    pub fn format_element(&self, v: &[FieldElement]) -> String {
        let f = self.field();
        let names = self.parent().names();
        let mut terms = Vec::new();
        for (m, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut word: Vec<String> = Vec::new();
            for (i, &a) in self.monomial(m).iter().enumerate() {
                match a {
                    0 => {}
                    1 => word.push(names[i].clone()),
                    _ => word.push(format!("{}^{a}", names[i])),
                }
            }
            let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
            if c == FieldElement::ONE {
                terms.push(word);
            } else {
                terms.push(format!("{}*{word}", f.format(c)));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Check the decomposition identities for `E` built on `x`.
    pub fn check_decomposition(&self, e: &Subspace) -> Result<DecompositionCheck> {
        let f = self.field();
        let jl = self.jl_subspace()?;
        let l = self.l_subspace();
        let l_plus_e = l.sum(f, e)?;
        let omega_is_l_plus_e = l_plus_e == self.augmentation_ideal();
        let l_plus_jl_meet_e_is_jl = l.sum(f, &jl)?.intersect(f, e)? == jl;
        let lp_u = self.right_ideal(&self.parent().derived_p());
        let e_meet_lp_u_is_jl = e.intersect(f, &lp_u)? == jl;
        Ok(DecompositionCheck {
            e_dim: e.dim(),
            jl_dim: jl.dim(),
            omega_is_l_plus_e,
            l_plus_jl_meet_e_is_jl,
            e_meet_lp_u_is_jl,
        })
    }

    /// `[E, ω] ⊆ J_L` and `u^p ∈ E` for the basis vectors `u` of `E`.
    /// Commutators are taken with the generators, which suffices because
    /// `J_L` is an ideal; with all monomials as well when `all_monomials`.
    pub fn verify_e_centrality(&self, e: &Subspace, all_monomials: bool) -> Result<CentralityReport> {
        if !self.parent().is_p_nilpotent() {
            return Err(Error::NotPNilpotent);
        }
        let f = self.field();
        let jl = self.jl_subspace()?;
        let mut report = CentralityReport::default();
        let partners: Vec<Vector> = if all_monomials {
            (1..self.dim()).map(|m| unit_vector(self.dim(), m)).collect()
        } else {
            (0..self.generators()).map(|i| unit_vector(self.dim(), self.generator_index(i))).collect()
        };
        let p = self.parent().characteristic() as u64;
        for u in e.basis() {
            for w in &partners {
                report.checked_commutators += 1;
                let c = self.commutator(u, w);
                if !jl.contains(f, &c)? {
                    report.violations.push(format!(
                        "[{}, {}] = {} is not in J_L",
                        self.format_element(u),
                        self.format_element(w),
                        self.format_element(&c)
                    ));
                }
            }
            report.checked_powers += 1;
            let up = self.pow(u, p);
            if !e.contains(f, &up)? {
                report.violations.push(format!(
                    "({})^p = {} is not in E",
                    self.format_element(u),
                    self.format_element(&up)
                ));
            }
        }
        Ok(report)
    }

    /// Basis of `L` adapted to the filtration `D_n = L ∩ ω^n`, with the
    /// height of each vector.
    pub fn height_basis(&self, omega: &[Subspace]) -> Result<(Vec<Vector>, Vec<usize>)> {
        let l = self.parent();
        if !omega.last().is_some_and(Subspace::is_zero) {
            return Err(Error::NotPNilpotent);
        }
        let mut d: Vec<Subspace> = omega.iter().map(|s| self.oracle_from(s)).collect();
        d.push(Subspace::zero(l.dim()));
        let mut basis = Vec::new();
        let mut heights = Vec::new();
        for k in 0..d.len() - 1 {
            for v in d[k].complement_basis(l.field(), &d[k + 1])? {
                basis.push(v);
                heights.push(k + 1);
            }
        }
        Ok((basis, heights))
    }

    /// Largest `n` with `x ∈ L ∩ ω^n`; `None` for `x = 0`.
    pub fn height(&self, omega: &[Subspace], x: &[FieldElement]) -> Option<usize> {
        if crate::exactla::is_zero(x) {
            return None;
        }
        let v = self.embed(x);
        let mut h = 0;
        for (k, s) in omega.iter().enumerate() {
            if s.contains(self.field(), &v).expect("same ambient") {
                h = k + 1;
            } else {
                break;
            }
        }
        Some(h)
    }

    /// For the height-adapted basis `Z`, the ordered monomials in `Z` of
    /// weight at least `k` should form a basis of `ω^k`, for every `k`.
    pub fn weight_basis_counts(&self, omega: &[Subspace]) -> Result<Vec<WeightCount>> {
        let f = self.field();
        let (z, heights) = self.height_basis(omega)?;
        let factors: Vec<Vector> = z.iter().map(|v| self.embed(v)).collect();
        let monomials: Vec<(usize, Vector)> = self
            .exponent_tuples(factors.len())
            .into_iter()
            .map(|exps| {
                let weight = exps.iter().zip(&heights).map(|(&a, &h)| a as usize * h).sum();
                (weight, self.ordered_product(&factors, &exps))
            })
            .collect();
        let mut out = Vec::new();
        for (idx, s) in omega.iter().enumerate() {
            let k = idx + 1;
            let chosen: Vec<&Vector> = monomials.iter().filter(|(w, _)| *w >= k).map(|(_, v)| v).collect();
            let span = Subspace::from_vectors(f, self.dim(), chosen.iter().copied())?;
            let inside = chosen.iter().all(|v| s.contains(f, v).expect("same ambient"));
            out.push(WeightCount {
                k,
                omega_dim: s.dim(),
                monomials: chosen.len(),
                basis: inside && span.dim() == chosen.len(),
            });
        }
        Ok(out)
    }

    /// For an algebra isomorphism `φ: u(L) → u(H)` given by its matrix,
    /// whether `φ(D_n(L) + ω^{n+1}(L)) = D_n(H) + ω^{n+1}(H)` for each `n`.
    pub fn filtration_shadow(
        &self,
        omega: &[Subspace],
        target: &PbwAlgebra,
        target_omega: &[Subspace],
        phi: &Matrix,
    ) -> Result<Vec<bool>> {
        let f = self.field();
        let level = |u: &PbwAlgebra, om: &[Subspace], n: usize| -> Result<Subspace> {
            let zero = Subspace::zero(u.dim());
            let d = u.embed_subspace(&u.oracle_from(om.get(n - 1).unwrap_or(&zero)));
            d.sum(f, om.get(n).unwrap_or(&zero))
        };
        let mut out = Vec::new();
        for n in 1..=omega.len().max(target_omega.len()) {
            let src = level(self, omega, n)?;
            let dst = level(target, target_omega, n)?;
            out.push(src.image(f, phi)? == dst);
        }
        Ok(out)
    }
}
