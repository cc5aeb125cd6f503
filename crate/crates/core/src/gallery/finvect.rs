//! Finite-dimensional vector spaces over `F_p`: objects `V0..=Vn`,
//! morphisms all matrices.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, MorId, MorphismDef, ObjId, RawCategory};
use crate::error::{Error, Result};
use crate::finfield::{vector_from_index, vector_index, Fp, Matrix};

#[derive(Debug, Clone)]
pub struct FinVect {
    cat: Arc<FinCategory>,
    field: Fp,
    max_dim: usize,
    matrices: Vec<Matrix>,
    offsets: Vec<u32>,
}

impl FinVect {
    pub fn new(p: u32, max_dim: usize, budget: &Budget) -> Result<FinVect> {
        let field = Fp::new(p)?;
        let n = max_dim + 1;
        let mut total = 0u64;
        for r in 0..n {
            for c in 0..n {
                total = total.saturating_add(Matrix::count(r, c, field));
            }
        }
        if total > budget.max_morphisms as u64 {
            return Err(Error::Budget(format!(
                "FinVect over F_{p} up to dimension {max_dim} has {total} morphisms, cap is {}",
                budget.max_morphisms
            )));
        }
        let objects: Vec<String> = (0..n).map(|d| format!("V{d}")).collect();
        let mut morphisms = Vec::new();
        let mut matrices = Vec::new();
        let mut offsets = Vec::with_capacity(n * n);
        let mut identities = vec![None; n];
        // hom(Vc, Vr) holds the r×c matrices
        for c in 0..n {
            for r in 0..n {
                offsets.push(morphisms.len() as u32);
                for code in 0..Matrix::count(r, c, field) {
                    let m = Matrix::from_code(r, c, code, field);
                    let name = if r == c && m == Matrix::identity(r) {
                        identities[r] = Some(MorId(morphisms.len() as u32));
                        format!("id_V{r}")
                    } else {
                        m.to_string()
                    };
                    morphisms.push(MorphismDef {
                        name,
                        dom: ObjId(c as u32),
                        cod: ObjId(r as u32),
                    });
                    matrices.push(m);
                }
            }
        }
        let mut raw = RawCategory::new(format!("FinVect{p}_{max_dim}"), objects, morphisms, identities);
        raw.fill_with(|g, f| {
            let prod = matrices[g.index()].mul(&matrices[f.index()], field);
            MorId(offsets[prod.cols * n + prod.rows] + prod.code(field) as u32)
        });
        let cat = FinCategory::from_raw(raw).map_err(Error::Invalid)?;
        Ok(FinVect {
            cat: Arc::new(cat),
            field,
            max_dim,
            matrices,
            offsets,
        })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn object(&self, dim: usize) -> ObjId {
        assert!(dim <= self.max_dim, "dimension {dim} outside the category");
        ObjId(dim as u32)
    }

    pub fn dim(&self, x: ObjId) -> usize {
        x.index()
    }

    /// Number of vectors in the space `x`.
    pub fn cardinality(&self, x: ObjId) -> usize {
        (self.field.order() as usize).pow(x.0)
    }

    pub fn matrix(&self, f: MorId) -> &Matrix {
        &self.matrices[f.index()]
    }

    pub fn morphism(&self, m: &Matrix) -> MorId {
        let n = self.max_dim + 1;
        MorId(self.offsets[m.cols * n + m.rows] + m.code(self.field) as u32)
    }

    pub fn vector(&self, x: ObjId, index: usize) -> Vec<u8> {
        vector_from_index(x.index(), index as u64, self.field)
    }

    pub fn vector_index(&self, v: &[u8]) -> usize {
        vector_index(v, self.field) as usize
    }

    /// Action of `f` on vectors, as a table indexed by vector index.
    pub fn element_table(&self, f: MorId) -> Vec<u32> {
        let m = self.matrix(f);
        let dom = self.cat.dom(f);
        (0..self.cardinality(dom))
            .map(|i| self.vector_index(&m.apply(&self.vector(dom, i), self.field)) as u32)
            .collect()
    }
}

/// FinVect over `F_p` up to `max_dim` with the default budget.
pub fn build_finvect(p: u32, max_dim: usize) -> Result<FinCategory> {
    Ok((*FinVect::new(p, max_dim, &Budget::default())?.cat).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_identity() {
        let v = FinVect::new(2, 2, &Budget::default()).unwrap();
        let c = v.category();
        assert_eq!(c.hom_set(v.object(2), v.object(2)).len(), 16);
        assert_eq!(v.matrix(c.identity(v.object(2))), &Matrix::identity(2));
        assert_eq!(c.num_morphisms(), 31);
    }

    #[test]
    fn composition_is_matrix_product() {
        let v = FinVect::new(3, 2, &Budget::default()).unwrap();
        let c = v.category();
        let f = Matrix::from_code(2, 1, 5, v.field());
        let g = Matrix::from_code(1, 2, 7, v.field());
        let gf = c.compose(v.morphism(&g), v.morphism(&f)).unwrap();
        assert_eq!(v.matrix(gf), &g.mul(&f, v.field()));
    }
}
