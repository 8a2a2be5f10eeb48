use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Dense matrix of polynomials over one variable list, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.vars() != entries[0].vars()) {
            return Err(Error::InvalidInput(
                "matrix entries use different variable lists".into(),
            ));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, vars: &[&str]) -> Result<Self> {
        let entries = (0..n * n)
            .map(|k| MultiPoly::constant(vars, i32::from(k / n == k % n)))
            .collect();
        Self::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Cofactor expansion along the first remaining row.
    pub fn determinant(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(0, &cols))
    }

    fn minor(&self, row: usize, cols: &[usize]) -> MultiPoly {
        let vars = self.entries[0].vars().to_vec();
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = MultiPoly::zero_owned(vars);
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.minor(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

/// Resultant of `p` and `q` with respect to variable `var`, as the
/// determinant of their Sylvester matrix. The result does not involve
/// `var`; it vanishes at the projection of every common root.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if p.vars() != q.vars() {
        return Err(Error::InvalidInput(
            "resultant of polynomials over different variables".into(),
        ));
    }
    let vars: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero(&vars));
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    if size == 0 {
        return Ok(MultiPoly::constant(&vars, 1));
    }
    let zero = MultiPoly::zero(&vars);
    let mut entries = vec![zero; size * size];
    // rows hold coefficients from the leading one down
    for r in 0..n {
        for (i, c) in pc.iter().rev().enumerate() {
            entries[r * size + r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in qc.iter().rev().enumerate() {
            entries[(n + r) * size + r + i] = c.clone();
        }
    }
    PolyMatrix::new(size, size, entries)?.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(text, vars).unwrap()
    }

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn identity_determinant() {
        let m = PolyMatrix::identity(3, &XYZ).unwrap();
        assert_eq!(m.determinant().unwrap(), MultiPoly::constant(&XYZ, 1));
    }

    #[test]
    fn order_two_window() {
        let vars = ["x", "y"];
        for b in 1..=6 {
            let m = PolyMatrix::from_rows(vec![
                vec![p("x", &vars), p("y", &vars)],
                vec![p("y", &vars), p(&format!("{b}*y - x"), &vars)],
            ])
            .unwrap();
            let expected = p(&format!("-(x^2 - {b}*x*y + y^2)"), &vars);
            assert_eq!(m.determinant().unwrap(), expected);
        }
    }

    #[test]
    fn tribonacci_window_is_minus_invariant() {
        let rows = [
            ["x", "y", "z"],
            ["y", "z", "x+y+z"],
            ["z", "x+y+z", "x+2y+2z"],
        ];
        let m = PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| p(e, &XYZ)).collect())
                .collect(),
        )
        .unwrap();
        let pt = p("x^3+2x^2y+x^2z+2xy^2-2xyz-xz^2+2y^3-2yz^2+z^3", &XYZ);
        assert_eq!(m.determinant().unwrap(), -pt);
    }

    #[test]
    fn alternating() {
        let rows = [["x", "1", "y"], ["z", "x*y", "2"], ["y^2", "z", "x"]];
        let mut m = PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| p(e, &XYZ)).collect())
                .collect(),
        )
        .unwrap();
        let d = m.determinant().unwrap();
        m.swap_rows(0, 2);
        assert_eq!(m.determinant().unwrap(), -d);
        let rep = PolyMatrix::from_rows(vec![
            m.row(0).to_vec(),
            m.row(1).to_vec(),
            m.row(0).to_vec(),
        ])
        .unwrap();
        assert!(rep.determinant().unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::new(1, 2, vec![p("x", &XYZ), p("y", &XYZ)]).unwrap();
        assert!(matches!(m.determinant(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn resultant_eliminates() {
        let vars = ["t", "s"];
        // common roots of t - s and t^2 + s^2 - 2: s = +-1
        let f = p("t - s", &vars);
        let g = p("t^2 + s^2 - 2", &vars);
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, p("2*s^2 - 2", &vars));
        assert!(resultant(&f, &p("2t - 2s", &vars), 0).unwrap().is_zero());
    }
}
