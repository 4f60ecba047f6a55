use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let (mut num, mut den) = (1u128, 1u128);
        for r in 0..ki {
            num = num * (ni - r) as u128 % p as u128;
            den = den * (r + 1) as u128 % p as u128;
        }
        acc = acc * num % p as u128 * modpow(den, p as u128 - 2, p as u128) % p as u128;
        n /= p;
        k /= p;
    }
    acc as u64
}

fn modpow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Power series truncated at `t^K`; exactly `K + 1` coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    field: Field,
    coeffs: Vec<Fq>,
}

impl PowerSeries {
    pub fn zero(field: &Field, k: usize) -> PowerSeries {
        PowerSeries {
            field: field.clone(),
            coeffs: vec![Fq::ZERO; k + 1],
        }
    }

    pub fn constant(field: &Field, c: Fq, k: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(field, k);
        s.coeffs[0] = c;
        s
    }

    /// Series from coefficients, padded with zeros or cut to `K + 1` entries.
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Fq>, k: usize) -> PowerSeries {
        coeffs.resize(k + 1, Fq::ZERO);
        PowerSeries {
            field: field.clone(),
            coeffs,
        }
    }

    /// `(u + t)^i`
    pub fn shifted_power(field: &Field, u: Fq, i: u64, k: usize) -> PowerSeries {
        let p = field.p();
        let top = (i as usize).min(k);
        let coeffs = (0..=top)
            .map(|m| {
                let b = binom_mod(i, m as u64, p);
                field.mul(field.from_int(b as i64), field.pow(u, i - m as u64))
            })
            .collect();
        PowerSeries::from_coeffs(field, coeffs, k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Result<Fq> {
        self.coeffs
            .get(i)
            .copied()
            .ok_or(Error::OrderExceedsTruncation {
                order: i,
                truncation: self.truncation(),
            })
    }

    /// Index of the first nonzero coefficient, if any within the truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, k: usize) -> PowerSeries {
        PowerSeries::from_coeffs(
            &self.field,
            self.coeffs[..=k.min(self.truncation())].to_vec(),
            k,
        )
    }

    pub fn add(&self, o: &PowerSeries) -> PowerSeries {
        let k = self.truncation().min(o.truncation());
        let f = &self.field;
        PowerSeries {
            field: f.clone(),
            coeffs: (0..=k)
                .map(|i| f.add(self.coeffs[i], o.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, o: &PowerSeries) -> PowerSeries {
        let k = self.truncation().min(o.truncation());
        let f = &self.field;
        PowerSeries {
            field: f.clone(),
            coeffs: (0..=k)
                .map(|i| f.sub(self.coeffs[i], o.coeffs[i]))
                .collect(),
        }
    }

    pub fn scale(&self, c: Fq) -> PowerSeries {
        let f = &self.field;
        PowerSeries {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Product truncated to the smaller of the two truncations.
    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let k = self.truncation().min(o.truncation());
        let f = &self.field;
        let mut out = vec![Fq::ZERO; k + 1];
        for (i, &a) in self.coeffs[..=k].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        PowerSeries {
            field: f.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> PowerSeries {
        let k = self.truncation();
        let mut acc = PowerSeries::constant(&self.field, Fq::ONE, k);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<PowerSeries> {
        let f = &self.field;
        let k = self.truncation();
        let c0 = f.inv(self.coeffs[0])?;
        let mut out = vec![Fq::ZERO; k + 1];
        out[0] = c0;
        for m in 1..=k {
            let mut s = Fq::ZERO;
            for j in 1..=m {
                s = f.add(s, f.mul(self.coeffs[j], out[m - j]));
            }
            out[m] = f.neg(f.mul(s, c0));
        }
        Ok(PowerSeries {
            field: f.clone(),
            coeffs: out,
        })
    }

    /// Divides by `t^v`; the first `v` coefficients must vanish.
    pub fn shift_down(&self, v: usize) -> PowerSeries {
        debug_assert!(self.coeffs[..v].iter().all(|c| c.is_zero()));
        let k = self.truncation() - v;
        PowerSeries::from_coeffs(&self.field, self.coeffs[v..].to_vec(), k)
    }

    /// Multiplies by `t^v`, keeping `K` fixed.
    pub fn shift_up(&self, v: usize, k: usize) -> PowerSeries {
        let mut c = vec![Fq::ZERO; v];
        c.extend_from_slice(&self.coeffs);
        PowerSeries::from_coeffs(&self.field, c, k)
    }

    /// Series of the i-th Hasse derivative `D^(i) g (u + t)`, whose m-th
    /// coefficient is `C(m + i, i) g_{m+i}`. Truncation drops by `i`.
    pub fn hasse(&self, i: usize) -> Result<PowerSeries> {
        let k = self.truncation();
        if i > k {
            return Err(Error::OrderExceedsTruncation {
                order: i,
                truncation: k,
            });
        }
        let f = &self.field;
        let p = f.p();
        let coeffs = (0..=k - i)
            .map(|m| {
                let b = binom_mod((m + i) as u64, i as u64, p);
                f.mul(f.from_int(b as i64), self.coeffs[m + i])
            })
            .collect();
        Ok(PowerSeries {
            field: f.clone(),
            coeffs,
        })
    }
}

/// The i-th coefficient of the product of two series, `sum_j a_j b_{i-j}`.
pub fn hasse_product(a: &PowerSeries, b: &PowerSeries, i: usize) -> Result<Fq> {
    let k = a.truncation().min(b.truncation());
    if i > k {
        return Err(Error::OrderExceedsTruncation {
            order: i,
            truncation: k,
        });
    }
    let f = a.field();
    Ok((0..=i).fold(Fq::ZERO, |acc, j| {
        f.add(acc, f.mul(a.coeffs[j], b.coeffs[i - j]))
    }))
}

/// Sparse polynomial in `x, y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(u32, u32), Fq>,
}

impl BiPoly {
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u32, u32, Fq)>) -> BiPoly {
        let mut map: BTreeMap<(u32, u32), Fq> = BTreeMap::new();
        for (i, j, c) in terms {
            let slot = map.entry((i, j)).or_insert(Fq::ZERO);
            *slot = field.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        BiPoly {
            field: field.clone(),
            terms: map,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Fq)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }
    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Fq, y: Fq) -> Fq {
        let f = &self.field;
        self.terms.iter().fold(Fq::ZERO, |acc, (&(i, j), &c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, i as u64), f.pow(y, j as u64))))
        })
    }

    pub fn partial_x(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(
            f,
            self.terms()
                .filter(|t| t.0 > 0)
                .map(|(i, j, c)| (i - 1, j, f.mul(c, f.from_int(i as i64)))),
        )
    }

    pub fn partial_y(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(
            f,
            self.terms()
                .filter(|t| t.1 > 0)
                .map(|(i, j, c)| (i, j - 1, f.mul(c, f.from_int(j as i64)))),
        )
    }

    /// Value of `f(u + t, y(t))` as a series.
    pub fn compose(&self, u: Fq, y: &PowerSeries) -> PowerSeries {
        let k = y.truncation();
        let f = &self.field;
        // group by y-exponent: f = sum_j A_j(x) y^j
        let mut by_j: BTreeMap<u32, PowerSeries> = BTreeMap::new();
        for (i, j, c) in self.terms() {
            let xs = PowerSeries::shifted_power(f, u, i as u64, k).scale(c);
            let slot = by_j.entry(j).or_insert_with(|| PowerSeries::zero(f, k));
            *slot = slot.add(&xs);
        }
        let mut acc = PowerSeries::zero(f, k);
        let mut last_j = 0u32;
        let mut ypow = PowerSeries::constant(f, Fq::ONE, k);
        for (j, a) in by_j {
            if j > last_j {
                ypow = ypow.mul(&y.pow((j - last_j) as u64));
                last_j = j;
            }
            acc = acc.add(&a.mul(&ypow));
        }
        acc
    }
}

/// The branch `y(t) = w + sum y_i t^i` of `f(x, y) = 0` through `(u, w)` with
/// `x = u + t`, to order `K`. Coefficient `y_i` is the Hasse derivative
/// `D_x^(i)(y)` at the point. Uses Newton iteration, then re-substitutes and
/// checks `f(u + t, y(t)) = 0 mod t^(K+1)`.
pub fn branch_expand(f: &BiPoly, u: Fq, w: Fq, k: usize) -> Result<PowerSeries> {
    let field = f.field();
    if !f.eval(u, w).is_zero() {
        return Err(Error::NotOnCurve);
    }
    let fy = f.partial_y();
    if fy.eval(u, w).is_zero() {
        return Err(Error::TangentVertical);
    }
    let mut y = PowerSeries::constant(field, w, 0);
    let mut prec = 1usize;
    while prec < k + 1 {
        let next = (2 * prec).min(k + 1);
        let ys = PowerSeries::from_coeffs(field, y.coeffs().to_vec(), next - 1);
        let val = f.compose(u, &ys);
        let der = fy.compose(u, &ys);
        y = ys.sub(&val.mul(&der.inv()?));
        prec = next;
    }
    let check = f.compose(u, &y);
    if check.valuation().is_some() {
        return Err(Error::Internal(
            "branch re-substitution does not vanish".into(),
        ));
    }
    Ok(y)
}

/// Determinant of a square matrix of series, exact modulo `t^(K+1)` where
/// `K` is the smallest truncation among the entries. Pivots are chosen by
/// minimal valuation so every elimination step stays inside `F[[t]]`.
pub fn series_det(field: &Field, m: &[Vec<PowerSeries>]) -> Result<PowerSeries> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    if n == 0 {
        return Ok(PowerSeries::constant(field, Fq::ONE, 0));
    }
    let k = m.iter().flatten().map(|s| s.truncation()).min().unwrap();
    let mut a: Vec<Vec<PowerSeries>> = m
        .iter()
        .map(|r| r.iter().map(|s| s.truncate(k)).collect())
        .collect();
    let mut negate = false;
    let mut shift = 0usize;
    let mut units: Vec<PowerSeries> = Vec::new();
    let mut prec = k; // entries of the working block are known mod t^(prec+1)
    for c in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(c) {
            if let Some(v) = row[c].valuation() {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((r, v));
                }
            }
        }
        let Some((r, v)) = best else {
            return Ok(PowerSeries::zero(field, k));
        };
        if shift + v > k {
            return Ok(PowerSeries::zero(field, k));
        }
        if r != c {
            a.swap(r, c);
            negate = !negate;
        }
        let unit = a[c][c].shift_down(v);
        let unit_inv = unit.inv()?;
        let new_prec = prec - v;
        let pivot_row: Vec<PowerSeries> = a[c][c + 1..].iter().map(|x| x.truncate(new_prec)).collect();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].valuation().is_none() {
                continue;
            }
            let factor = row[c].shift_down(v).mul(&unit_inv.truncate(new_prec));
            for (entry, piv) in row[c + 1..].iter_mut().zip(&pivot_row) {
                *entry = entry.truncate(new_prec).sub(&factor.mul(piv));
            }
        }
        for row in a.iter_mut().skip(c + 1) {
            for entry in row.iter_mut().skip(c + 1) {
                *entry = entry.truncate(new_prec);
            }
        }
        units.push(unit);
        shift += v;
        prec = new_prec;
    }
    // det = ± t^shift * prod(units), known mod t^(k+1)
    let rest = k - shift;
    let mut acc = PowerSeries::constant(field, Fq::ONE, rest);
    for u in &units {
        acc = acc.mul(&u.truncate(rest));
    }
    if negate {
        acc = acc.scale(field.neg(Fq::ONE));
    }
    Ok(acc.shift_up(shift, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::det;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lucas_binomials() {
        assert_eq!(binom_mod(10, 3, 13), 120 % 13);
        assert_eq!(binom_mod(11, 1, 11), 0);
        assert_eq!(binom_mod(22, 11, 11), 2);
    }

    #[test]
    fn parabola_expansion() {
        let f = Field::prime(7).unwrap();
        let minus1 = f.from_int(-1);
        let g = BiPoly::from_terms(&f, [(0, 1, Fq::ONE), (2, 0, minus1)]);
        let s = branch_expand(&g, Fq::ZERO, Fq::ZERO, 4).unwrap();
        assert_eq!(
            s.coeffs(),
            &[Fq::ZERO, Fq::ZERO, Fq::ONE, Fq::ZERO, Fq::ZERO]
        );
    }

    #[test]
    fn expansion_errors() {
        let f = Field::prime(7).unwrap();
        let g = BiPoly::from_terms(&f, [(0, 2, Fq::ONE), (1, 0, f.from_int(-1))]);
        assert_eq!(
            branch_expand(&g, Fq::ONE, Fq::ZERO, 3),
            Err(Error::NotOnCurve)
        );
        assert_eq!(
            branch_expand(&g, Fq::ZERO, Fq::ZERO, 3),
            Err(Error::TangentVertical)
        );
    }

    #[test]
    fn truncation_consistency() {
        let f = Field::new(11, 2, None).unwrap();
        let g = BiPoly::from_terms(
            &f,
            [
                (0, 4, Fq::ONE),
                (4, 0, f.from_int(-1)),
                (2, 0, f.from_int(-3)),
                (0, 0, f.from_int(-1)),
            ],
        );
        let mut done = 0;
        for u in f.elements() {
            let a = f.add(
                f.add(f.pow(u, 4), f.mul(f.from_int(3), f.pow(u, 2))),
                Fq::ONE,
            );
            for w in f.nth_roots(a, 4) {
                let Ok(long) = branch_expand(&g, u, w, 20) else {
                    continue;
                };
                let short = branch_expand(&g, u, w, 7).unwrap();
                assert_eq!(long.truncate(7), short);
                done += 1;
            }
        }
        assert!(done > 10);
    }

    #[test]
    fn product_coefficients_match_convolution() {
        let f = Field::new(13, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = PowerSeries::from_coeffs(
                &f,
                (0..7).map(|_| Fq(rng.gen_range(0..169))).collect(),
                6,
            );
            let b = PowerSeries::from_coeffs(
                &f,
                (0..7).map(|_| Fq(rng.gen_range(0..169))).collect(),
                6,
            );
            let c = a.mul(&b);
            for i in 0..=6 {
                assert_eq!(hasse_product(&a, &b, i).unwrap(), c.coeffs()[i]);
            }
            assert!(hasse_product(&a, &b, 7).is_err());
        }
    }

    #[test]
    fn series_det_matches_pointwise_det() {
        // constant terms of the series determinant equal the scalar determinant
        let f = Field::new(11, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..5);
            let m: Vec<Vec<PowerSeries>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let mut c: Vec<Fq> =
                                (0..6).map(|_| Fq(rng.gen_range(0..121))).collect();
                            if rng.gen_bool(0.3) {
                                c[0] = Fq::ZERO;
                            }
                            PowerSeries::from_coeffs(&f, c, 5)
                        })
                        .collect()
                })
                .collect();
            let d = series_det(&f, &m).unwrap();
            // compare with the Leibniz expansion over series
            let brute = leibniz(&f, &m);
            assert_eq!(d, brute);
            let consts: Vec<Vec<Fq>> = m
                .iter()
                .map(|r| r.iter().map(|s| s.coeffs()[0]).collect())
                .collect();
            assert_eq!(d.coeffs()[0], det(&f, &consts).unwrap());
        }
    }

    fn leibniz(f: &Field, m: &[Vec<PowerSeries>]) -> PowerSeries {
        let n = m.len();
        let k = m[0][0].truncation();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = PowerSeries::zero(f, k);
        for c in 0..n {
            let minor: Vec<Vec<PowerSeries>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, s)| s.clone())
                        .collect()
                })
                .collect();
            let term = m[0][c].mul(&leibniz(f, &minor));
            acc = if c % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
}
