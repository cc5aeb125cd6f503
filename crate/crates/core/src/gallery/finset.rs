//! The skeleton of finite sets: objects `0..=n`, morphisms all functions.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, MorId, MorphismDef, ObjId, RawCategory};
use crate::error::{Error, Result};

/// FinSet(≤n) together with the function table of every morphism.
#[derive(Debug, Clone)]
pub struct FinSetSkeleton {
    cat: Arc<FinCategory>,
    max_size: usize,
    tables: Vec<Vec<u8>>,
    /// First morphism id of `hom(m, k)` at `m * (n+1) + k`.
    offsets: Vec<u32>,
}

impl FinSetSkeleton {
    pub fn new(max_size: usize, budget: &Budget) -> Result<FinSetSkeleton> {
        if max_size > budget.max_set_size {
            return Err(Error::Budget(format!(
                "FinSet skeleton of max size {max_size} exceeds the cap {}",
                budget.max_set_size
            )));
        }
        let sizes = 0..=max_size;
        let total: usize = sizes.clone().flat_map(|m| sizes.clone().map(move |k| k.pow(m as u32))).sum();
        budget.check_morphisms("FinSet skeleton", total)?;

        let n = max_size + 1;
        let objects: Vec<String> = (0..n).map(|m| m.to_string()).collect();
        let mut morphisms = Vec::with_capacity(total);
        let mut tables = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(n * n);
        let mut identities = vec![None; n];
        for m in 0..n {
            for k in 0..n {
                offsets.push(morphisms.len() as u32);
                for code in 0..k.pow(m as u32) {
                    let values = digits(code, k, m);
                    let is_id = m == k && values.iter().enumerate().all(|(i, &v)| v as usize == i);
                    let name = if is_id {
                        identities[m] = Some(MorId(morphisms.len() as u32));
                        format!("id_{m}")
                    } else {
                        function_name(m, k, &values)
                    };
                    morphisms.push(MorphismDef {
                        name,
                        dom: ObjId(m as u32),
                        cod: ObjId(k as u32),
                    });
                    tables.push(values);
                }
            }
        }
        let cods: Vec<usize> = morphisms.iter().map(|d: &MorphismDef| d.cod.index()).collect();
        let mut raw = RawCategory::new(format!("FinSet{max_size}"), objects, morphisms, identities);
        let lookup = |m: usize, k: usize, values: &[u8]| {
            MorId(offsets[m * n + k] + values.iter().fold(0u32, |acc, &v| acc * k as u32 + v as u32))
        };
        raw.fill_with(|g, f| {
            let (tf, tg) = (&tables[f.index()], &tables[g.index()]);
            let composite: Vec<u8> = tf.iter().map(|&v| tg[v as usize]).collect();
            lookup(tf.len(), cods[g.index()], &composite)
        });
        let cat = FinCategory::from_raw(raw).map_err(Error::Invalid)?;
        Ok(FinSetSkeleton {
            cat: Arc::new(cat),
            max_size,
            tables,
            offsets,
        })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// The object with `size` elements.
    pub fn object(&self, size: usize) -> ObjId {
        assert!(size <= self.max_size, "set size {size} outside the skeleton");
        ObjId(size as u32)
    }

    pub fn size(&self, x: ObjId) -> usize {
        x.index()
    }

    /// Values of the function `f` on `0..|dom f|`.
    pub fn table(&self, f: MorId) -> &[u8] {
        &self.tables[f.index()]
    }

    pub fn function(&self, dom: usize, cod: usize, values: &[u8]) -> MorId {
        assert_eq!(values.len(), dom);
        let n = self.max_size + 1;
        MorId(self.offsets[dom * n + cod] + values.iter().fold(0u32, |acc, &v| acc * cod as u32 + v as u32))
    }
}

/// FinSet(≤max_size) with the default budget.
pub fn build_finset_skeleton(max_size: usize) -> Result<FinCategory> {
    Ok((*FinSetSkeleton::new(max_size, &Budget::default())?.cat).clone())
}

fn digits(mut code: usize, base: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % base) as u8;
        code /= base;
    }
    out
}

fn function_name(m: usize, k: usize, values: &[u8]) -> String {
    let mut name = format!("f{m}{k}");
    if !values.is_empty() {
        name.push('_');
        name.extend(values.iter().map(|v| char::from(b'0' + v)));
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_set_sizes_are_powers() {
        let s = FinSetSkeleton::new(3, &Budget::default()).unwrap();
        let c = s.category();
        for m in 0..=3 {
            for k in 0..=3 {
                assert_eq!(c.hom_set(s.object(m), s.object(k)).len(), k.pow(m as u32));
            }
        }
    }

    #[test]
    fn composition_is_function_composition() {
        let s = FinSetSkeleton::new(3, &Budget::default()).unwrap();
        let c = s.category();
        let f = s.function(2, 3, &[2, 0]);
        let g = s.function(3, 2, &[1, 1, 0]);
        let gf = c.compose(g, f).unwrap();
        assert_eq!(s.table(gf), &[0, 1]);
        assert_eq!(gf, c.identity(s.object(2)));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(FinSetSkeleton::new(5, &Budget::default()), Err(Error::Budget(_))));
    }
}
