use super::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::exactla::{solve_combination, FieldElement, Subspace, Vector};

/// `gr(L) = ⊕ D_i / D_{i+1}` together with the representatives used.
#[derive(Debug, Clone)]
pub struct Graded {
    pub algebra: AlgebraPresentation,
    /// `representatives[k]` is the element of `L` behind basis vector `k`.
    pub representatives: Vec<Vector>,
    /// Weight of each basis vector.
    pub weights: Vec<usize>,
}

impl AlgebraPresentation {
    /// The associated graded algebra of the dimension filtration.
    ///
    /// Fails with `NotPNilpotent` when the filtration does not reach zero,
    /// and with `Validation` if an induced bracket or p-power leaves the
    /// expected filtration term.
    pub fn graded(&self) -> Result<Graded> {
        let f = self.field();
        let series = self.dimension_series();
        if !series.last().is_none_or(|d| d.space.is_zero()) {
            return Err(Error::NotPNilpotent);
        }
        let spaces: Vec<Subspace> = series.iter().map(|d| d.space.clone()).collect();
        let term = |k: usize| -> Subspace { spaces.get(k - 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim())) };

        let mut reps = Vec::new();
        let mut weights = Vec::new();
        // Offsets of each weight block within the graded basis.
        let mut blocks: Vec<(usize, usize)> = vec![(0, 0)];
        for k in 1..=spaces.len() {
            let start = reps.len();
            for v in term(k).complement_basis(f, &term(k + 1))? {
                reps.push(v);
                weights.push(k);
            }
            blocks.push((start, reps.len()));
        }
        let n = reps.len();
        debug_assert_eq!(n, self.dim());

        // Class of `w ∈ D_k` modulo `D_{k+1}` in graded coordinates.
        let class = |w: &[FieldElement], k: usize| -> Result<Vector> {
            let mut out = vec![FieldElement::ZERO; n];
            if k >= blocks.len() {
                return if crate::exactla::is_zero(w) {
                    Ok(out)
                } else {
                    Err(Error::Validation("induced element leaves the filtration".into()))
                };
            }
            let (start, end) = blocks[k];
            let mut family: Vec<Vector> = reps[start..end].to_vec();
            family.extend(term(k + 1).basis().iter().cloned());
            let c = solve_combination(f, &family, w)
                .ok_or_else(|| Error::Validation(format!("induced element does not lie in filtration term {k}")))?;
            out[start..end].copy_from_slice(&c[..end - start]);
            Ok(out)
        };

        let p = self.characteristic() as usize;
        let mut out = AlgebraPresentation::new(f.clone(), n);
        for a in 0..n {
            for b in a + 1..n {
                let w = self.bracket(&reps[a], &reps[b]);
                out.set_bracket(a, b, class(&w, weights[a] + weights[b])?)?;
            }
            let w = self.p_power(&reps[a]);
            out.set_pmap(a, class(&w, weights[a] * p)?)?;
        }
        let names = (0..n).map(|k| format!("g{}_{}", weights[k], k + 1)).collect();
        let algebra = out.with_names(names)?.with_weights(weights.clone());
        Ok(Graded { algebra, representatives: reps, weights })
    }
}
