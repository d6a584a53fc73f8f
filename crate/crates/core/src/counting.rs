//! Exact counts of `k`-connected chain trees of height at most `p`.
//!
//! * `N(p,k)`, all trees: `N(0,k) = 1`, `N(p,k) = sum_{i=0..k} N(p-1,k)^i`.
//! * `M(p,k)`, canonical trees: `M(0,k) = 1`, `M(p,k) = C(M(p-1,k) + k, k)`,
//!   the number of multisets of at most `k` canonical subtrees.
//!
//! Both grow doubly exponentially in `p`, so values are big integers.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn count_all(p: u32, k: u32) -> BigUint {
    let mut n = BigUint::one();
    for _ in 0..p {
        let mut sum = BigUint::zero();
        let mut power = BigUint::one();
        for _ in 0..=k {
            sum += &power;
            power *= &n;
        }
        n = sum;
    }
    n
}

/// `N(p,k)` through the geometric closed form `(N^(k+1) - 1) / (N - 1)`,
/// falling back to `k + 1` when `N = 1`.
pub fn count_all_closed_form(p: u32, k: u32) -> BigUint {
    let mut n = BigUint::one();
    for _ in 0..p {
        n = if n.is_one() {
            BigUint::from(k + 1)
        } else {
            (n.pow(k + 1) - 1u32) / (&n - 1u32)
        };
    }
    n
}

pub fn count_canonical(p: u32, k: u32) -> BigUint {
    let mut m = BigUint::one();
    for _ in 0..p {
        m = binomial(&(&m + k), k);
    }
    m
}

/// `C(n, k)` for a big `n` and a machine-size `k`.
pub fn binomial(n: &BigUint, k: u32) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    // after step i the accumulator is C(n - k + i, i), always an integer
    let base = n - k;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= &base + i;
        acc /= i;
    }
    acc
}

/// Natural logarithm of a big integer, exact to double precision.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits in f64").ln()
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().expect("64 bits fit");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Logarithm of the Stirling estimate of `M(p,k)` computed from the exact
/// `M(p-1,k)`:
///
/// `M ~ (m+k)^(m+k+1/2) / (sqrt(2 pi) m^(m+1/2) k^(k+1/2))` with `m = M(p-1,k)`.
///
/// Rearranged as `(m+1/2) ln(1 + k/m) + k ln(m+k) - (k+1/2) ln k - ln sqrt(2 pi)`
/// so that it stays finite for any `m`.
///
/// # Panics
///
/// If `p` or `k` is zero.
pub fn approx_canonical_ln(p: u32, k: u32) -> f64 {
    assert!(p >= 1 && k >= 1, "the estimate needs p >= 1 and k >= 1");
    let prev = count_canonical(p - 1, k);
    let kf = f64::from(k);
    let ln_sum = ln_big(&(&prev + k));
    let growth = match prev.to_f64().filter(|m| m.is_finite()) {
        Some(m) => (m + 0.5) * (kf / m).ln_1p(),
        // (m + 1/2) ln(1 + k/m) -> k
        None => kf,
    };
    growth + kf * ln_sum - (kf + 0.5) * kf.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

/// Stirling estimate of `M(p,k)`. Overflows to infinity only when the
/// estimate itself exceeds `f64`; see [`approx_canonical_ln`].
pub fn approx_canonical(p: u32, k: u32) -> f64 {
    approx_canonical_ln(p, k).exp()
}

/// A value as printed in a published table: either exact, or a truncated
/// decimal `digits * 10^exponent` standing for `[digits, digits + 1) * 10^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PublishedValue {
    Exact(u64),
    Truncated { digits: u64, exponent: u32 },
}

impl PublishedValue {
    pub fn matches(&self, value: &BigUint) -> bool {
        match *self {
            PublishedValue::Exact(v) => *value == BigUint::from(v),
            PublishedValue::Truncated { digits, exponent } => {
                let scale = BigUint::from(10u32).pow(exponent);
                let lo = BigUint::from(digits) * &scale;
                let hi = BigUint::from(digits + 1) * &scale;
                lo <= *value && *value < hi
            }
        }
    }
}

impl fmt::Display for PublishedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PublishedValue::Exact(v) => write!(f, "{v}"),
            PublishedValue::Truncated { digits, exponent } => {
                let s = digits.to_string();
                let (head, tail) = s.split_at(1);
                write!(f, "{head}.{tail}e{}", exponent as usize + tail.len())
            }
        }
    }
}

/// Previously published `(N, M)` values for `p` in 1..=3 and `k` in 1..=4,
/// indexed `[p-1][k-1]`.
pub const PUBLISHED: [[(PublishedValue, PublishedValue); 4]; 3] = {
    use PublishedValue::{Exact as E, Truncated as T};
    [
        [(E(2), E(2)), (E(3), E(3)), (E(4), E(4)), (E(5), E(5))],
        [(E(3), E(3)), (E(13), E(10)), (E(85), E(35)), (E(775), E(126))],
        [
            (E(4), E(4)),
            (E(183), E(66)),
            (E(221436), E(8436)),
            (T { digits: 361, exponent: 9 }, T { digits: 113, exponent: 5 }),
        ],
    ]
};

pub fn published(p: u32, k: u32) -> Option<(PublishedValue, PublishedValue)> {
    let row = PUBLISHED.get((p as usize).checked_sub(1)?)?;
    row.get((k as usize).checked_sub(1)?).copied()
}

/// A cell whose computed value disagrees with the published one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub p: u32,
    pub k: u32,
    /// `'N'` or `'M'`.
    pub column: char,
    pub computed: BigUint,
    pub published: PublishedValue,
}

/// Exact `N` and `M` for `p` in `1..=p_max`, `k` in `1..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub p_max: u32,
    pub k_max: u32,
    /// `[p-1][k-1]`
    pub n_values: Vec<Vec<BigUint>>,
    /// `[p-1][k-1]`
    pub m_values: Vec<Vec<BigUint>>,
}

pub fn comparison_table(p_max: u32, k_max: u32) -> CountTable {
    let grid = |f: fn(u32, u32) -> BigUint| {
        (1..=p_max)
            .map(|p| (1..=k_max).map(|k| f(p, k)).collect())
            .collect()
    };
    CountTable { p_max, k_max, n_values: grid(count_all), m_values: grid(count_canonical) }
}

impl CountTable {
    pub fn n(&self, p: u32, k: u32) -> &BigUint {
        &self.n_values[p as usize - 1][k as usize - 1]
    }

    pub fn m(&self, p: u32, k: u32) -> &BigUint {
        &self.m_values[p as usize - 1][k as usize - 1]
    }

    fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (1..=self.p_max).flat_map(move |p| (1..=self.k_max).map(move |k| (p, k)))
    }

    /// Cells where the computed value contradicts the published table.
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        let mut out = Vec::new();
        for (p, k) in self.cells() {
            let Some((pub_n, pub_m)) = published(p, k) else {
                continue;
            };
            for (column, computed, published) in [('N', self.n(p, k), pub_n), ('M', self.m(p, k), pub_m)] {
                if !published.matches(computed) {
                    out.push(Discrepancy { p, k, column, computed: computed.clone(), published });
                }
            }
        }
        out
    }

    /// `p,k,N,M` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,k,N,M\n");
        for (p, k) in self.cells() {
            writeln!(out, "{p},{k},{},{}", self.n(p, k), self.m(p, k)).unwrap();
        }
        out
    }

    /// Aligned `N / M` grid. Cells that disagree with the published values
    /// carry a `*` and are listed below the grid.
    pub fn to_text(&self) -> String {
        let flagged = self.discrepancies();
        let is_flagged = |p, k| flagged.iter().any(|d| d.p == p && d.k == k);
        let mut rows = vec![std::iter::once("N / M".to_string())
            .chain((1..=self.k_max).map(|k| format!("k={k}")))
            .collect::<Vec<_>>()];
        for p in 1..=self.p_max {
            let mut row = vec![format!("p={p}")];
            for k in 1..=self.k_max {
                let mark = if is_flagged(p, k) { "*" } else { "" };
                row.push(format!("{} / {}{mark}", self.n(p, k), self.m(p, k)));
            }
            rows.push(row);
        }
        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        }
        if !flagged.is_empty() {
            out.push('\n');
            for d in &flagged {
                writeln!(
                    out,
                    "* {}({},{}): computed {}, published {}",
                    d.column, d.p, d.k, d.computed, d.published
                )
                .unwrap();
            }
        }
        out
    }
}
