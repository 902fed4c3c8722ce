//! Smith normal form of integer matrices.

use num_integer::Integer;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self { rows: n, cols: m, data: rows.iter().flatten().copied().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + k * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + k * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, the diagonal
/// entries non-negative and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pr, pc)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for r in t + 1..d.rows {
                let x = d.get(r, t);
                if x != 0 {
                    let k = Integer::div_floor(&x, &d.get(t, t));
                    d.add_row(r, t, -k);
                    u.add_row(r, t, -k);
                    if d.get(r, t) != 0 {
                        d.swap_rows(t, r);
                        u.swap_rows(t, r);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..d.cols {
                let x = d.get(t, c);
                if x != 0 {
                    let k = Integer::div_floor(&x, &d.get(t, t));
                    d.add_col(c, t, -k);
                    v.add_col(c, t, -k);
                    if d.get(t, c) != 0 {
                        d.swap_cols(t, c);
                        v.swap_cols(t, c);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let p = d.get(t, t);
            let offender =
                (t + 1..d.rows).flat_map(|r| (t + 1..d.cols).map(move |c| (r, c))).find(|&(r, c)| d.get(r, c) % p != 0);
            match offender {
                Some((r, _)) => {
                    d.add_row(t, r, 1);
                    u.add_row(t, r, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for r in t..d.rows {
        for c in t..d.cols {
            let x = d.get(r, c).abs();
            if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                best = Some((r, c, x));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// True for square matrices of determinant ±1.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    if m.rows != m.cols {
        return false;
    }
    determinant(m).abs() == 1
}

/// Bareiss determinant.
pub fn determinant(m: &IntMatrix) -> i64 {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a: Vec<Vec<i128>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c) as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert_eq!(s.d.get(r, c), 0);
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..1u32 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    /// Determinantal divisors: gcd of all k×k minors, for k = 1..=rank.
    fn minor_gcds(a: &IntMatrix) -> Vec<i64> {
        let mut out = Vec::new();
        for k in 1..=a.rows().min(a.cols()) {
            let mut g = 0i64;
            for rs in subsets(a.rows(), k) {
                for cs in subsets(a.cols(), k) {
                    let rows: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| a.get(r, c)).collect()).collect();
                    g = num_integer::gcd(g, determinant(&IntMatrix::from_rows(&rows)));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    fn factors_from_minors(a: &IntMatrix) -> Vec<i64> {
        let d = minor_gcds(a);
        (0..d.len()).map(|k| if k == 0 { d[0] } else { d[k] / d[k - 1] }).collect()
    }

    #[test]
    fn quadric_cone_generator_matrix() {
        let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![0, 1, 2]]);
        assert_eq!(factors_from_minors(&a), vec![1, 2]);
        assert_eq!(check(&a).invariant_factors(), vec![1, 2]);
    }

    #[test]
    fn agrees_with_determinantal_divisors() {
        let cases = [
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![1, 0], vec![1, 2], vec![0, 3]],
            vec![vec![4, 6, 8], vec![6, 9, 12]],
            vec![vec![0, 0], vec![0, 5]],
        ];
        for rows in cases {
            let a = IntMatrix::from_rows(&rows);
            assert_eq!(check(&a).invariant_factors(), factors_from_minors(&a), "{rows:?}");
        }
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(check(&IntMatrix::identity(3)).invariant_factors(), vec![1, 1, 1]);
        assert!(check(&IntMatrix::zeros(2, 2)).invariant_factors().is_empty());
    }

    #[test]
    fn classic_example() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])), -1);
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])), 1);
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])), 0);
    }
}
