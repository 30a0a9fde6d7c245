//! Exhaustive short-vector enumeration, representation counts and theta series.
//!
//! Vectors with `f(v) <= N` are enumerated coordinate by coordinate. For a
//! fixed `x` the minimum of `f` over `z` is a binary quadratic in `y`, and for
//! fixed `(x, y)` the value is a quadratic in `z`; each stage solves its
//! quadratic inequality with an integer square root. The arithmetic runs in
//! `i128` whatever the form's scalar type.

use num_integer::Roots;
use rayon::prelude::*;

use super::{TernaryForm, Vec3};
use crate::scalar::Scalar;

struct Layout {
    a: [[i128; 3]; 3],
}

impl Layout {
    fn new<T: Scalar>(f: &TernaryForm<T>) -> Self {
        Layout { a: f.wide() }
    }

    fn det(&self) -> i128 {
        let a = &self.a;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[1][2])
            - a[0][1] * (a[0][1] * a[2][2] - a[1][2] * a[0][2])
            + a[0][2] * (a[0][1] * a[1][2] - a[1][1] * a[0][2])
    }

    fn x_range(&self, n: i128) -> std::ops::RangeInclusive<i128> {
        let a = &self.a;
        let adj = a[1][1] * a[2][2] - a[1][2] * a[1][2];
        let r = (n * adj / self.det()).sqrt() + 1;
        -r..=r
    }

    /// Integers `y` with `min_z f(x, y, z) <= n`, padded by one on each side.
    fn y_range(&self, x: i128, n: i128) -> Option<std::ops::RangeInclusive<i128>> {
        let a = &self.a;
        let big_a = a[1][1] * a[2][2] - a[1][2] * a[1][2];
        let big_b = x * (a[0][1] * a[2][2] - a[0][2] * a[1][2]);
        let big_c = x * x * (a[0][0] * a[2][2] - a[0][2] * a[0][2]);
        let disc = big_b * big_b - big_a * (big_c - n * a[2][2]);
        if disc < 0 {
            return None;
        }
        let s = disc.sqrt() + 1;
        Some((-big_b - s).div_euclid(big_a)..=(-big_b + s).div_euclid(big_a) + 1)
    }

    /// `(b, c)` with `f(x, y, z) = a33·z² + 2b·z + c`.
    fn z_coeffs(&self, x: i128, y: i128) -> (i128, i128) {
        let a = &self.a;
        let b = a[0][2] * x + a[1][2] * y;
        let c = a[0][0] * x * x + 2 * a[0][1] * x * y + a[1][1] * y * y;
        (b, c)
    }

    fn each_in_slice(&self, x: i128, n: i128, cb: &mut impl FnMut([i128; 3], i128)) {
        let a33 = self.a[2][2];
        let Some(ys) = self.y_range(x, n) else {
            return;
        };
        for y in ys {
            let (b, c) = self.z_coeffs(x, y);
            let disc = b * b - a33 * (c - n);
            if disc < 0 {
                continue;
            }
            let s = disc.sqrt() + 1;
            let lo = (-b - s).div_euclid(a33);
            let hi = (-b + s).div_euclid(a33) + 1;
            for z in lo..=hi {
                let v = a33 * z * z + 2 * b * z + c;
                if v <= n {
                    cb([x, y, z], v);
                }
            }
        }
    }

    fn count_exact_in_slice(&self, x: i128, n: i128) -> u64 {
        let a33 = self.a[2][2];
        let Some(ys) = self.y_range(x, n) else {
            return 0;
        };
        let mut count = 0;
        for y in ys {
            let (b, c) = self.z_coeffs(x, y);
            let disc = b * b - a33 * (c - n);
            if disc < 0 {
                continue;
            }
            let s = disc.sqrt();
            if s * s != disc {
                continue;
            }
            for num in if s == 0 { vec![-b] } else { vec![-b - s, -b + s] } {
                if num % a33 == 0 {
                    count += 1;
                }
            }
        }
        count
    }
}

fn narrow<T: Scalar>(v: [i128; 3]) -> Vec3<T> {
    v.map(|c| T::from_i128(c).expect("short vector coordinates are small"))
}

/// Calls `cb(v, f(v))` for every integer vector with `f(v) <= max_norm`.
pub fn for_each_vector<T: Scalar>(
    f: &TernaryForm<T>,
    max_norm: u64,
    mut cb: impl FnMut(Vec3<T>, u64),
) {
    let layout = Layout::new(f);
    let n = max_norm as i128;
    for x in layout.x_range(n) {
        layout.each_in_slice(x, n, &mut |v, val| cb(narrow(v), val as u64));
    }
}

/// All integer vectors with `f(v) = n`, in lexicographic order.
pub fn vectors_of_norm<T: Scalar>(f: &TernaryForm<T>, n: u64) -> Vec<Vec3<T>> {
    let mut out = Vec::new();
    for_each_vector(f, n, |v, val| {
        if val == n {
            out.push(v);
        }
    });
    out.sort();
    out
}

/// `r(n, f)`: the number of integer vectors `v` with `f(v) = n`.
pub fn rep_count<T: Scalar>(n: u64, f: &TernaryForm<T>) -> u64 {
    let layout = Layout::new(f);
    let n = n as i128;
    layout
        .x_range(n)
        .into_par_iter()
        .map(|x| layout.count_exact_in_slice(x, n))
        .sum()
}

/// `r(n, f)` for every `0 <= n <= bound`.
pub fn theta_series<T: Scalar>(f: &TernaryForm<T>, bound: u64) -> Vec<u64> {
    let layout = Layout::new(f);
    let n = bound as i128;
    let len = bound as usize + 1;
    layout
        .x_range(n)
        .into_par_iter()
        .fold(
            || vec![0u64; len],
            |mut acc, x| {
                layout.each_in_slice(x, n, &mut |_, val| acc[val as usize] += 1);
                acc
            },
        )
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// `Q(f) ∩ [0, bound]`, sorted.
pub fn represented_set<T: Scalar>(f: &TernaryForm<T>, bound: u64) -> Vec<u64> {
    theta_series(f, bound)
        .into_iter()
        .enumerate()
        .filter(|&(_, r)| r > 0)
        .map(|(n, _)| n as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F = TernaryForm<i64>;

    fn form(s: &str) -> F {
        s.parse().unwrap()
    }

    /// Box scan using `v_i² <= n·adj(M)_ii / det(M)` for each coordinate separately.
    fn naive_count(f: &F, n: u64) -> u64 {
        let adj = f.gram().adjugate_diagonal().unwrap();
        let r: Vec<i64> = adj
            .iter()
            .map(|&c| ((n as i64 * c / f.det()) as f64).sqrt() as i64 + 1)
            .collect();
        let mut count = 0;
        for x in -r[0]..=r[0] {
            for y in -r[1]..=r[1] {
                for z in -r[2]..=r[2] {
                    if f.eval(&[x, y, z]).unwrap() == n as i64 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    fn complement(f: &F, bound: u64) -> Vec<u64> {
        let rep = represented_set(f, bound);
        (0..=bound).filter(|n| rep.binary_search(n).is_err()).collect()
    }

    #[test]
    fn counts_from_examples() {
        assert_eq!(rep_count(0, &form("diag:5,7,9")), 1);
        assert_eq!(rep_count(4, &form("diag:1,3,3")), 10);
        assert_eq!(rep_count(4, &form("diag:1,27,27")), 2);
        assert_eq!(rep_count(1, &form("diag:1,1,1")), 6);
        assert_eq!(rep_count(3, &form("diag:1,1,1")), 8);
    }

    #[test]
    fn represented_set_examples() {
        assert_eq!(complement(&form("diag:1,1,1"), 30), vec![7, 15, 23, 28]);
        assert_eq!(complement(&form("diag:1,1,2"), 30), vec![14, 30]);
        assert_eq!(complement(&form("diag:1,2,5"), 60), vec![10, 15, 35, 40, 60]);
    }

    #[test]
    fn theta_matches_rep_count() {
        let f = form("gram:7,-3,2;-3,9,3;2,3,16");
        let theta = theta_series(&f, 400);
        for n in 0..=400 {
            assert_eq!(theta[n as usize], rep_count(n, &f), "n = {n}");
        }
    }

    #[test]
    fn vectors_of_norm_are_exact() {
        let f = form("gram:4,1,0;1,7,0;0,0,27");
        let vs = vectors_of_norm(&f, 27);
        assert_eq!(vs.len() as u64, rep_count(27, &f));
        assert!(vs.iter().all(|v| f.eval(v).unwrap() == 27));
        assert!(vs.contains(&[0, 0, 1]));
    }

    fn small_form() -> impl Strategy<Value = F> {
        (1i64..8, 1i64..8, 1i64..8, -3i64..4, -3i64..4, -3i64..4).prop_filter_map(
            "positive definite",
            |(a, b, c, d, e, g)| F::from_i64([[a, d, e], [d, b, g], [e, g, c]]).ok(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn counts_match_box_oracle(f in small_form(), n in 0u64..60) {
            prop_assert_eq!(rep_count(n, &f), naive_count(&f, n));
        }

        #[test]
        fn theta_sums_to_vector_count(f in small_form(), bound in 0u64..80) {
            let mut count = 0u64;
            for_each_vector(&f, bound, |v, val| {
                assert_eq!(f.eval(&v).unwrap() as u64, val);
                count += 1;
            });
            prop_assert_eq!(theta_series(&f, bound).iter().sum::<u64>(), count);
        }
    }
}
