//! Degreewise generation testing for graded algebras given by structure
//! constants.
//!
//! The input is abstract: a dimension per degree and, for every pair of
//! degrees inside the cutoff, the coordinates of all products of basis
//! vectors. The check answers, degree by degree, whether the component is
//! spanned by products of elements drawn from the components up to a bound
//! `k` — computed by iterated closure of the generated subspaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::PrimeField;

/// Products of the degree-`d1` basis against the degree-`d2` basis:
/// `table[i][j]` lists the coordinates of `e_{d1,i} * e_{d2,j}` in the
/// degree-`d1+d2` basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductBlock {
    pub d1: usize,
    pub d2: usize,
    pub table: Vec<Vec<Vec<u64>>>,
}

/// A graded algebra truncated at degree `dims.len() - 1`, described by its
/// component dimensions and structure constants over `F_p`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureConstants {
    pub p: u64,
    pub dims: Vec<usize>,
    pub products: Vec<ProductBlock>,
}

/// Validated form: reduced coefficients and a complete block index.
pub struct GradedStructure {
    field: PrimeField,
    dims: Vec<usize>,
    /// `blocks[d1][d2]`, present whenever `d1 + d2 <= cutoff` and both
    /// factor components are nonzero.
    blocks: Vec<Vec<Option<Vec<Vec<Vec<u32>>>>>>,
}

impl GradedStructure {
    /// Checks shapes, completeness and associativity of the raw input.
    pub fn validate(raw: &StructureConstants) -> Result<Self> {
        let field = PrimeField::new(raw.p)?;
        if raw.dims.is_empty() {
            return Err(Error::InconsistentStructure(
                "at least the degree-0 dimension is required".into(),
            ));
        }
        let cutoff = raw.dims.len() - 1;
        let mut blocks: Vec<Vec<Option<Vec<Vec<Vec<u32>>>>>> =
            vec![vec![None; cutoff + 1]; cutoff + 1];

        for block in &raw.products {
            let (d1, d2) = (block.d1, block.d2);
            if d1 + d2 > cutoff {
                return Err(Error::InconsistentStructure(format!(
                    "product block ({d1},{d2}) exceeds the cutoff {cutoff}"
                )));
            }
            if blocks[d1][d2].is_some() {
                return Err(Error::InconsistentStructure(format!(
                    "duplicate product block ({d1},{d2})"
                )));
            }
            let (rows, cols, out) = (raw.dims[d1], raw.dims[d2], raw.dims[d1 + d2]);
            if block.table.len() != rows {
                return Err(Error::InconsistentStructure(format!(
                    "block ({d1},{d2}) has {} rows, expected {rows}",
                    block.table.len()
                )));
            }
            let mut reduced = Vec::with_capacity(rows);
            for row in &block.table {
                if row.len() != cols {
                    return Err(Error::InconsistentStructure(format!(
                        "block ({d1},{d2}) has a row of {} entries, expected {cols}",
                        row.len()
                    )));
                }
                let mut rrow = Vec::with_capacity(cols);
                for vec in row {
                    if vec.len() != out {
                        return Err(Error::InconsistentStructure(format!(
                            "block ({d1},{d2}) has a product vector of length {}, expected {out}",
                            vec.len()
                        )));
                    }
                    rrow.push(vec.iter().map(|&c| field.from_u64(c)).collect::<Vec<u32>>());
                }
                reduced.push(rrow);
            }
            blocks[d1][d2] = Some(reduced);
        }

        for d1 in 0..=cutoff {
            for d2 in 0..=cutoff - d1 {
                if raw.dims[d1] > 0 && raw.dims[d2] > 0 && blocks[d1][d2].is_none() {
                    return Err(Error::InconsistentStructure(format!(
                        "missing product block ({d1},{d2})"
                    )));
                }
            }
        }

        let s = GradedStructure { field, dims: raw.dims.clone(), blocks };
        s.check_associativity()?;
        Ok(s)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    /// Product of coordinate vectors `a` in degree `d1` and `b` in `d2`.
    fn multiply(&self, d1: usize, a: &[u32], d2: usize, b: &[u32]) -> Vec<u32> {
        let out_dim = self.dims[d1 + d2];
        let mut out = vec![0u32; out_dim];
        let Some(table) = &self.blocks[d1][d2] else {
            return out;
        };
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = self.field.mul(ai, bj);
                for (o, &t) in out.iter_mut().zip(&table[i][j]) {
                    *o = self.field.add(*o, self.field.mul(c, t));
                }
            }
        }
        out
    }

    fn basis_vector(&self, d: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dims[d]];
        v[i] = 1;
        v
    }

    fn check_associativity(&self) -> Result<()> {
        let cutoff = self.cutoff();
        for d1 in 0..=cutoff {
            for d2 in 0..=cutoff - d1 {
                for d3 in 0..=cutoff - d1 - d2 {
                    for i in 0..self.dims[d1] {
                        let ei = self.basis_vector(d1, i);
                        for j in 0..self.dims[d2] {
                            let ej = self.basis_vector(d2, j);
                            let eij = self.multiply(d1, &ei, d2, &ej);
                            for k in 0..self.dims[d3] {
                                let ek = self.basis_vector(d3, k);
                                let left = self.multiply(d1 + d2, &eij, d3, &ek);
                                let ejk = self.multiply(d2, &ej, d3, &ek);
                                let right = self.multiply(d1, &ei, d2 + d3, &ejk);
                                if left != right {
                                    return Err(Error::InconsistentStructure(format!(
                                        "associativity fails on basis triple \
                                         ({d1},{i})x({d2},{j})x({d3},{k})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A dense echelon basis of a subspace of `F_p^n`.
struct Subspace {
    field: PrimeField,
    dim_ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    fn zero(field: PrimeField, dim_ambient: usize) -> Self {
        Subspace { field, dim_ambient, rows: Vec::new() }
    }

    fn full(field: PrimeField, dim_ambient: usize) -> Self {
        let mut s = Self::zero(field, dim_ambient);
        for i in 0..dim_ambient {
            let mut v = vec![0u32; dim_ambient];
            v[i] = 1;
            s.insert(v);
        }
        s
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Echelon insertion; true when the vector enlarged the space.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.dim_ambient);
        for row in &self.rows {
            let lead = row.iter().position(|&c| c != 0).expect("rows are nonzero");
            let c = v[lead];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = self.field.sub(*x, self.field.mul(c, r));
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(lead) => {
                let inv = self.field.inv(v[lead]).expect("leading entry is nonzero");
                for x in &mut v {
                    *x = self.field.mul(*x, inv);
                }
                self.rows.push(v);
                self.rows.sort_unstable_by_key(|row| {
                    row.iter().position(|&c| c != 0).expect("rows are nonzero")
                });
                true
            }
        }
    }

    fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

/// For each degree `m` up to the cutoff, whether the degree-`m` component
/// is spanned by products of elements of components `0..=k`.
///
/// Components up to `k` count as generated outright. Above `k`, the
/// generated subspace is grown as a fixpoint of `S_m += S_{d1} * S_{d2}`
/// over all splits `d1 + d2 = m`; splits involving degree 0 reuse the
/// current `S_m`, so absorption by the degree-0 component is honored.
pub fn generation_check(structure: &GradedStructure, k: usize) -> Vec<bool> {
    let field = structure.field();
    let cutoff = structure.cutoff();
    let mut spaces: Vec<Subspace> = Vec::with_capacity(cutoff + 1);
    let mut verdicts = Vec::with_capacity(cutoff + 1);

    for m in 0..=cutoff {
        let dim = structure.dims()[m];
        if m <= k {
            spaces.push(Subspace::full(field, dim));
            verdicts.push(true);
            continue;
        }
        let mut space = Subspace::zero(field, dim);
        loop {
            let mut grew = false;
            for d1 in 0..=m {
                let d2 = m - d1;
                let left: Vec<Vec<u32>> = if d1 == m {
                    space.basis().to_vec()
                } else {
                    spaces[d1].basis().to_vec()
                };
                let right: Vec<Vec<u32>> = if d2 == m {
                    space.basis().to_vec()
                } else {
                    spaces[d2].basis().to_vec()
                };
                for a in &left {
                    for b in &right {
                        let prod = structure.multiply(d1, a, d2, b);
                        if space.insert(prod) {
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        verdicts.push(space.rank() == dim);
        spaces.push(space);
    }
    verdicts
}

#[cfg(test)]
mod tests {
    use super::*;

    /// F_p[y] with deg y = 1, truncated at `cutoff`: dims all 1, products
    /// multiply the basis monomials.
    fn polynomial_ring(p: u64, cutoff: usize) -> StructureConstants {
        let mut products = Vec::new();
        for d1 in 0..=cutoff {
            for d2 in 0..=cutoff - d1 {
                products.push(ProductBlock { d1, d2, table: vec![vec![vec![1]]] });
            }
        }
        StructureConstants { p, dims: vec![1; cutoff + 1], products }
    }

    /// Free algebra on two degree-1 letters truncated at `cutoff`: basis of
    /// degree d = words indexed 0..2^d, concatenation product
    /// w1*w2 = w1 shifted + w2.
    fn free_two_letters(p: u64, cutoff: usize) -> StructureConstants {
        let dims: Vec<usize> = (0..=cutoff).map(|d| 1usize << d).collect();
        let mut products = Vec::new();
        for d1 in 0..=cutoff {
            for d2 in 0..=cutoff - d1 {
                let mut table = Vec::with_capacity(dims[d1]);
                for i in 0..dims[d1] {
                    let mut row = Vec::with_capacity(dims[d2]);
                    for j in 0..dims[d2] {
                        let mut v = vec![0u64; dims[d1 + d2]];
                        v[(i << d2) | j] = 1;
                        row.push(v);
                    }
                    table.push(row);
                }
                products.push(ProductBlock { d1, d2, table });
            }
        }
        StructureConstants { p, dims, products }
    }

    #[test]
    fn polynomial_ring_is_generated_in_degree_one() {
        let s = GradedStructure::validate(&polynomial_ring(3, 5)).unwrap();
        assert_eq!(generation_check(&s, 1), vec![true; 6]);
    }

    #[test]
    fn gap_in_degree_one_blocks_generation() {
        // R_0 = F, R_1 = 0, R_2 != 0: nothing reaches degree 2 from below.
        let raw = StructureConstants {
            p: 3,
            dims: vec![1, 0, 1],
            products: vec![
                ProductBlock { d1: 0, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 2, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 2, d2: 0, table: vec![vec![vec![1]]] },
            ],
        };
        let s = GradedStructure::validate(&raw).unwrap();
        assert_eq!(generation_check(&s, 1), vec![true, true, false]);
        // With k = 2 the component is a generator and the verdict flips.
        assert_eq!(generation_check(&s, 2), vec![true, true, true]);
    }

    #[test]
    fn free_algebra_generated_by_letters() {
        let s = GradedStructure::validate(&free_two_letters(2, 4)).unwrap();
        assert_eq!(generation_check(&s, 1), vec![true; 5]);
        // Degree-0 generators alone generate nothing above degree 0.
        assert_eq!(generation_check(&s, 0), vec![true, false, false, false, false]);
    }

    #[test]
    fn non_associative_tables_are_rejected() {
        // One-dimensional components with a product that violates
        // associativity: e1*e1 = e2, e1*e2 = e3, e2*e1 = 2*e3 over F_3.
        let raw = StructureConstants {
            p: 3,
            dims: vec![1, 1, 1, 1],
            products: vec![
                ProductBlock { d1: 0, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 1, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 2, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 3, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 1, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 2, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 3, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 1, d2: 1, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 1, d2: 2, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 2, d2: 1, table: vec![vec![vec![2]]] },
            ],
        };
        let err = GradedStructure::validate(&raw);
        assert!(matches!(err, Err(Error::InconsistentStructure(_))));
    }

    #[test]
    fn shape_errors_are_reported() {
        // Missing block (1,1).
        let raw = StructureConstants {
            p: 3,
            dims: vec![1, 1, 1],
            products: vec![
                ProductBlock { d1: 0, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 1, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 2, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 1, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 2, d2: 0, table: vec![vec![vec![1]]] },
            ],
        };
        assert!(matches!(
            GradedStructure::validate(&raw),
            Err(Error::InconsistentStructure(msg)) if msg.contains("missing")
        ));
        // Wrong vector length inside a block.
        let raw = StructureConstants {
            p: 3,
            dims: vec![1, 2],
            products: vec![
                ProductBlock { d1: 0, d2: 0, table: vec![vec![vec![1]]] },
                ProductBlock { d1: 0, d2: 1, table: vec![vec![vec![1, 0], vec![0]]] },
                ProductBlock { d1: 1, d2: 0, table: vec![vec![vec![1, 0]], vec![vec![0, 1]]] },
            ],
        };
        assert!(GradedStructure::validate(&raw).is_err());
    }

    #[test]
    fn json_round_trip() {
        let raw = polynomial_ring(5, 3);
        let text = serde_json::to_string(&raw).unwrap();
        let back: StructureConstants = serde_json::from_str(&text).unwrap();
        assert_eq!(back.dims, raw.dims);
        assert_eq!(back.products.len(), raw.products.len());
        assert!(GradedStructure::validate(&back).is_ok());
    }
}
