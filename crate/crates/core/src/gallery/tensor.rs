//! Bilinear maps `V_a × V_b → V_c` as hets from pairs of spaces, whose left
//! representation is the tensor product.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, ObjId};
use crate::construct::{product, product_object, split_object};
use crate::error::Result;
use crate::gallery::finvect::FinVect;
use crate::gallery::hets::bilinear_het;
use crate::het::{HetBifunctor, HetId};

#[derive(Debug, Clone)]
pub struct Tensor {
    pub spaces: FinVect,
    pub square: Arc<FinCategory>,
    pub bilinear: Arc<HetBifunctor>,
}

impl Tensor {
    pub fn new(p: u32, max_dim: usize, budget: &Budget) -> Result<Tensor> {
        let spaces = FinVect::new(p, max_dim, budget)?;
        let square = Arc::new(product(spaces.category(), spaces.category()));
        let bilinear = bilinear_het("bilinear", &spaces, &square, &spaces, budget)?;
        Ok(Tensor {
            spaces,
            square,
            bilinear: Arc::new(bilinear),
        })
    }

    pub fn pair(&self, a: usize, b: usize) -> ObjId {
        product_object(self.spaces.category(), self.spaces.object(a), self.spaces.object(b))
    }

    pub fn dims(&self, x: ObjId) -> (usize, usize) {
        let (a, b) = split_object(self.spaces.category(), x);
        (self.spaces.dim(a), self.spaces.dim(b))
    }

    /// `(e_i, e_j) ↦ e_(i·b + j)` into `V_(a·b)`.
    pub fn canonical(&self, a: usize, b: usize) -> Result<HetId> {
        let c = a * b;
        let mut digits = String::new();
        for i in 0..a {
            for j in 0..b {
                for r in 0..c {
                    digits.push(if r == i * b + j { '1' } else { '0' });
                }
            }
        }
        let mut name = format!("bl{a}{b}{c}");
        if !digits.is_empty() {
            name.push('_');
            name.push_str(&digits);
        }
        self.bilinear.lookup_elem(&name)
    }
}

pub fn build_bilinear_het(p: u32, max_dim: usize, budget: &Budget) -> Result<Tensor> {
    Tensor::new(p, max_dim, budget)
}
