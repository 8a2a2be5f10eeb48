//! Arithmetic in `Q[x_1..x_k] / (p_1(x_1), .., p_k(x_k))`.
//!
//! Any polynomial relation that holds in this ring also holds after
//! substituting roots of the `p_i`, so the first linear dependency among the
//! powers of an element yields a nonzero polynomial vanishing at the
//! corresponding real value. Minimality is not required by callers.

use num_traits::{One, Zero};

use super::rational::BigRat;
use super::unipoly::UniPoly;

pub(crate) struct QuotientRing {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    /// per variable: reduced coefficient vectors of x^e
    powers: Vec<Vec<Vec<BigRat>>>,
    /// per variable: negated low coefficients of the monic reducer
    tails: Vec<Vec<BigRat>>,
}

impl QuotientRing {
    pub(crate) fn new(reducers: &[UniPoly]) -> Self {
        let mut dims = Vec::with_capacity(reducers.len());
        let mut tails = Vec::with_capacity(reducers.len());
        for r in reducers {
            let n = r.degree().expect("reducer must be nonconstant");
            assert!(n > 0, "reducer must be nonconstant");
            let lead = BigRat::from_integer(r.leading().unwrap().clone());
            tails.push(
                r.coeffs()[..n]
                    .iter()
                    .map(|c| -BigRat::from_integer(c.clone()) / &lead)
                    .collect::<Vec<_>>(),
            );
            dims.push(n);
        }
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let size = dims.iter().product();
        let mut ring = QuotientRing {
            dims,
            strides,
            size,
            powers: Vec::new(),
            tails,
        };
        ring.powers = (0..ring.dims.len())
            .map(|k| ring.power_table(k, 2 * ring.dims[k]))
            .collect();
        ring
    }

    fn power_table(&self, k: usize, upto: usize) -> Vec<Vec<BigRat>> {
        let n = self.dims[k];
        let mut table = Vec::with_capacity(upto + 1);
        let mut cur = vec![BigRat::zero(); n];
        cur[0] = BigRat::one();
        table.push(cur.clone());
        for _ in 0..upto {
            // multiply by x, then fold the overflow coefficient back
            let overflow = cur[n - 1].clone();
            for i in (1..n).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRat::zero();
            if !overflow.is_zero() {
                for (c, t) in cur.iter_mut().zip(&self.tails[k]) {
                    *c += &overflow * t;
                }
            }
            table.push(cur.clone());
        }
        table
    }

    fn ensure_powers(&mut self, k: usize, e: usize) {
        if self.powers[k].len() <= e {
            self.powers[k] = self.power_table(k, e);
        }
    }

    fn split(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let i = index / s;
                index %= s;
                i
            })
            .collect()
    }

    /// Accumulates `coeff * prod_k x_k^{exps[k]}` into `out`.
    fn add_monomial(&self, out: &mut [BigRat], coeff: &BigRat, exps: &[usize]) {
        let mut partial: Vec<(usize, BigRat)> = vec![(0, coeff.clone())];
        for (k, &e) in exps.iter().enumerate() {
            let row = &self.powers[k][e];
            let mut next = Vec::with_capacity(partial.len() * self.dims[k]);
            for (idx, c) in &partial {
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        next.push((idx + i * self.strides[k], c * v));
                    }
                }
            }
            partial = next;
        }
        for (idx, c) in partial {
            out[idx] += c;
        }
    }

    pub(crate) fn element(&mut self, terms: &[(Vec<u32>, BigRat)]) -> Vec<BigRat> {
        for (exps, _) in terms {
            for (k, &e) in exps.iter().enumerate() {
                self.ensure_powers(k, e as usize);
            }
        }
        let mut out = vec![BigRat::zero(); self.size];
        for (exps, coeff) in terms {
            let exps: Vec<usize> = exps.iter().map(|&e| e as usize).collect();
            self.add_monomial(&mut out, coeff, &exps);
        }
        out
    }

    pub(crate) fn mul(&self, a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
        let mut out = vec![BigRat::zero(); self.size];
        let bs: Vec<(Vec<usize>, &BigRat)> = b
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (self.split(j), v))
            .collect();
        for (i, av) in a.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            let ia = self.split(i);
            for (jb, bv) in &bs {
                let exps: Vec<usize> = ia.iter().zip(jb).map(|(x, y)| x + y).collect();
                self.add_monomial(&mut out, &(av * *bv), &exps);
            }
        }
        out
    }

    /// Nonzero polynomial (integer, primitive) annihilating `gamma`.
    pub(crate) fn annihilator(&self, gamma: &[BigRat]) -> UniPoly {
        struct Row {
            vec: Vec<BigRat>,
            pivot: usize,
            comb: Vec<BigRat>,
        }
        let mut rows: Vec<Row> = Vec::new();
        let mut cur = vec![BigRat::zero(); self.size];
        cur[0] = BigRat::one();
        for k in 0..=self.size {
            let mut v = cur.clone();
            let mut comb = vec![BigRat::zero(); self.size + 1];
            comb[k] = BigRat::one();
            for row in &rows {
                if v[row.pivot].is_zero() {
                    continue;
                }
                let f = &v[row.pivot] / &row.vec[row.pivot];
                for (x, y) in v.iter_mut().zip(&row.vec) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in comb.iter_mut().zip(&row.comb) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    comb.truncate(k + 1);
                    return UniPoly::from_rationals(&comb).0.primitive();
                }
                Some(pivot) => rows.push(Row { vec: v, pivot, comb }),
            }
            if k < self.size {
                cur = self.mul(&cur, gamma);
            }
        }
        unreachable!("more than dim + 1 independent powers")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn sqrt2_plus_sqrt3() {
        let r2 = UniPoly::from_i64s(&[-2, 0, 1]);
        let r3 = UniPoly::from_i64s(&[-3, 0, 1]);
        let mut ring = QuotientRing::new(&[r2, r3]);
        let g = ring.element(&[(vec![1, 0], int(1)), (vec![0, 1], int(1))]);
        // x^4 - 10x^2 + 1
        assert_eq!(ring.annihilator(&g), UniPoly::from_i64s(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn high_exponent_terms_reduce() {
        let r = UniPoly::from_i64s(&[-2, 0, 1]);
        let mut ring = QuotientRing::new(&[r]);
        // x^5 = 4x for x^2 = 2
        let g = ring.element(&[(vec![5], int(1))]);
        assert_eq!(g, vec![int(0), int(4)]);
        assert_eq!(ring.annihilator(&g), UniPoly::from_i64s(&[-32, 0, 1]));
    }
}
