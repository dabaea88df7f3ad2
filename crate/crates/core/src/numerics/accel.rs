//! Convergence acceleration of partial sums sampled on a sparse grid.
//!
//! For `c_n = S(node(n))` with `S(N) = S + b_1 N^(-e_1) + b_2 N^(-e_2) + ...`,
//! [`AccelScheme::salzer`] applies `(S_n - 1)^m n^m c_n / m!` at `n = n0`
//! (exact when the expansion is in integer powers of `1/n`), and
//! [`AccelScheme::richardson`] solves the linear system for a given list of
//! exponents `e_j`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, Real};

/// Cap on the number of summed terms.
pub const DEFAULT_PARTIAL_SUM_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeMap {
    /// `n -> n^2`
    Square,
    /// `n -> 2 n^2`, keeps alternating series on even truncations.
    TwiceSquare,
}

impl NodeMap {
    pub fn node(self, n: usize) -> usize {
        match self {
            NodeMap::Square => n * n,
            NodeMap::TwiceSquare => 2 * n * n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccelScheme {
    pub m: usize,
    pub n0: usize,
    pub node_map: NodeMap,
    pub partial_sum_cap: usize,
}

impl AccelScheme {
    pub fn new(m: usize, n0: usize, node_map: NodeMap) -> Result<Self> {
        let s = AccelScheme { m, n0, node_map, partial_sum_cap: DEFAULT_PARTIAL_SUM_CAP };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n0 == 0 {
            return Err(Error::Config("acceleration needs m >= 1 and n0 >= 1".into()));
        }
        if self.max_index() > self.partial_sum_cap {
            return Err(Error::Config(format!(
                "acceleration nodes reach {} terms, above the cap {}",
                self.max_index(),
                self.partial_sum_cap
            )));
        }
        Ok(())
    }

    /// Truncation indices `node(n0) < ... < node(n0 + m)`.
    pub fn nodes(&self) -> Vec<usize> {
        (self.n0..=self.n0 + self.m).map(|n| self.node_map.node(n)).collect()
    }

    pub fn max_index(&self) -> usize {
        self.node_map.node(self.n0 + self.m)
    }

    /// Bits lost to cancellation in the Salzer weights, roughly.
    pub fn guard_bits(&self) -> u32 {
        let top = (self.n0 + self.m) as f64;
        let lg = self.m as f64 * top.log2() - log2_factorial(self.m / 2) * 2.0;
        lg.max(0.0) as u32 + 32
    }

    /// Salzer's transform of `c[0..=m]` (sums at the nodes, in order).
    pub fn salzer<R: Real>(&self, c: &[Complex<R>]) -> Complex<R> {
        salzer(self.n0, self.m, c)
    }

    /// Limit of `c` under the model `S + sum_j b_j N^(-e_j)`, `exps.len() = m`.
    pub fn richardson<R: Real>(&self, c: &[Complex<R>], exps: &[Complex<R>]) -> Result<Complex<R>> {
        general_richardson(&self.nodes(), c, exps)
    }

    /// Salzer estimate; the error is twice the largest distance to the
    /// estimates of order `m - 1`, `m - 2`, `m - 3` on the largest nodes.
    pub fn salzer_with_error<R: Real>(&self, c: &[Complex<R>]) -> ApproxComplex<R> {
        let v = salzer(self.n0, self.m, c);
        let mut e = 0f64;
        for drop in 1..=3.min(self.m - 1) {
            let lower = salzer(self.n0 + drop, self.m - drop, &c[drop..]);
            e = e.max(cx::dist_f64(&v, &lower));
        }
        ApproxComplex::new(v, 2.0 * e)
    }

    pub fn richardson_with_error<R: Real>(&self, c: &[Complex<R>], exps: &[Complex<R>]) -> Result<ApproxComplex<R>> {
        let nodes = self.nodes();
        let v = general_richardson(&nodes, c, exps)?;
        let mut e = 0f64;
        for drop in 1..=3.min(self.m - 1) {
            let lower = general_richardson(&nodes[drop..], &c[drop..], &exps[..exps.len() - drop])?;
            e = e.max(cx::dist_f64(&v, &lower));
        }
        Ok(ApproxComplex::new(v, 2.0 * e))
    }
}

fn log2_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).log2()).sum()
}

/// `sum_j (-1)^(m-j) (n0+j)^m c_j / (j! (m-j)!)`.
pub fn salzer<R: Real>(n0: usize, m: usize, c: &[Complex<R>]) -> Complex<R> {
    let p = cx::prec_of(&c[0]);
    let mut fact = vec![R::from_i64(1, p)];
    for k in 1..=m {
        fact.push(fact[k - 1].clone() * R::from_i64(k as i64, p));
    }
    let mut acc = cx::from_i64::<R>(0, p);
    for j in 0..=m {
        let w = R::from_i64((n0 + j) as i64, p).powi(m as i64) / (fact[j].clone() * fact[m - j].clone());
        let t = c[j].clone() * cx::real(w);
        acc = if (m - j).is_multiple_of(2) { acc + t } else { acc - t };
    }
    acc
}

/// Solve `S + sum_j b_j (N_i/N_0)^(-e_j) = c_i` for `S` by Gaussian
/// elimination with partial pivoting.
pub fn general_richardson<R: Real>(nodes: &[usize], c: &[Complex<R>], exps: &[Complex<R>]) -> Result<Complex<R>> {
    let n = exps.len() + 1;
    if nodes.len() < n || c.len() < n {
        return Err(Error::InsufficientOrder { needed: n, have: nodes.len().min(c.len()) });
    }
    let p = cx::prec_of(&c[0]);
    let base = R::from_i64(nodes[0] as i64, p);
    let mut a: Vec<Vec<Complex<R>>> = Vec::with_capacity(n);
    for i in 0..n {
        let ratio = cx::real(R::from_i64(nodes[i] as i64, p) / base.clone());
        let lr = cx::ln(&ratio);
        let mut row = vec![cx::from_i64::<R>(1, p)];
        for e in exps {
            row.push(cx::exp(&(-(e.clone() * lr.clone()))));
        }
        row.push(c[i].clone());
        a.push(row);
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| cx::abs_f64(&a[i][col]).total_cmp(&cx::abs_f64(&a[j][col])))
            .expect("non-empty range");
        if cx::abs_f64(&a[piv][col]) == 0.0 {
            return Err(Error::NoFit);
        }
        a.swap(col, piv);
        for i in col + 1..n {
            let f = a[i][col].clone() / a[col][col].clone();
            for k in col..=n {
                let t = f.clone() * a[col][k].clone();
                a[i][k] = a[i][k].clone() - t;
            }
        }
    }
    let mut x = vec![cx::from_i64::<R>(0, p); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for k in i + 1..n {
            s = s - a[i][k].clone() * x[k].clone();
        }
        x[i] = s / a[i][i].clone();
    }
    Ok(x.swap_remove(0))
}

/// Partial sums `S(N) = sum_{k < N}` of a term stream, recorded at
/// increasing `nodes`; also returns the largest term magnitude seen.
pub fn partial_sums_at<R: Real>(
    nodes: &[usize],
    mut term: impl FnMut(usize) -> Complex<R>,
    prec: u32,
) -> (Vec<Complex<R>>, f64) {
    let mut out = Vec::with_capacity(nodes.len());
    let mut s = cx::from_i64::<R>(0, prec);
    let mut k = 0;
    let mut big = 0f64;
    for &n in nodes {
        while k < n {
            let t = term(k);
            big = big.max(cx::abs_f64(&t));
            s = s + t;
            k += 1;
        }
        out.push(s.clone());
    }
    (out, big)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    const P: u32 = 320;

    fn r(v: f64) -> Complex<BigFloat> {
        cx::real(BigFloat::from_f64(v, P))
    }

    #[test]
    fn zeta_two_by_salzer() {
        // sum 1/(k+1)^2 has integer-power tails in 1/N, hence in 1/n with N = n^2
        let s = AccelScheme::new(30, 30, NodeMap::Square).unwrap();
        let (c, _) = partial_sums_at(&s.nodes(), |k| r(1.0) / r(((k + 1) * (k + 1)) as f64), P);
        let v = s.salzer_with_error(&c);
        let pi = BigFloat::pi(P);
        let want = pi.clone() * pi / BigFloat::from_i64(6, 0);
        let err = (v.value.re.clone() - want).abs().to_f64();
        assert!(err < 1e-45, "err = {err:e}");
        assert!(v.radius >= err);
    }

    #[test]
    fn fractional_exponents() {
        // sum (k+1)^(-3/2): tail N^(-1/2) (c0 + c1/N + ...), plus zeta(3/2)
        let s = AccelScheme::new(24, 24, NodeMap::Square).unwrap();
        let h = BigFloat::from_ratio(&3.into(), &2.into(), P);
        let (c, _) = partial_sums_at(&s.nodes(), |k| cx::real(BigFloat::from_i64((k + 1) as i64, P).powf(&-h.clone())), P);
        let exps: Vec<_> = (0..24).map(|j| r(0.5 + j as f64)).collect();
        let v = s.richardson_with_error(&c, &exps).unwrap();
        let want = BigFloat::parse_decimal("2.61237534868548834334856756792407163057080065240006340757332824881492776768827286099624387", P).unwrap();
        let err = (v.value.re.clone() - want).abs().to_f64();
        assert!(err < 1e-30, "err = {err:e}");
        assert!(v.radius >= err, "err = {err:e}, radius = {:e}", v.radius);
    }

    #[test]
    fn rejects_bad_schemes() {
        assert!(AccelScheme::new(0, 10, NodeMap::Square).is_err());
        assert!(AccelScheme::new(10, 2000, NodeMap::Square).is_err());
        assert_eq!(AccelScheme::new(2, 3, NodeMap::TwiceSquare).unwrap().nodes(), vec![18, 32, 50]);
    }
}
