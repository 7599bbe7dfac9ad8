//! Linear algebra over `Z/e`: Howell forms of row spans and Smith forms of
//! relation matrices. Every finite abelian group in the cochain complexes has
//! exponent dividing `e`, so all of it embeds in some `(Z/e)^N`.

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` and `g >= 0`.
pub(crate) fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Like [`xgcd`], but keeps `a` in place when it already divides `b`, so
/// that eliminations against a pivot leave the pivot untouched.
fn elimination(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        (a, 1, 0)
    } else {
        xgcd(a, b)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    xgcd(a as i128, b as i128).0 as u64
}

fn md(x: i128, e: u64) -> u64 {
    x.rem_euclid(e as i128) as u64
}

/// `a·row1 + b·row2` reduced mod `e`.
fn lin(a: i128, r1: &[u64], b: i128, r2: &[u64], e: u64) -> Vec<u64> {
    r1.iter().zip(r2).map(|(&x, &y)| md(a * x as i128 + b * y as i128, e)).collect()
}

fn scale(a: u64, row: &[u64], e: u64) -> Vec<u64> {
    row.iter().map(|&x| md(a as i128 * x as i128, e)).collect()
}

fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&x| x == 0)
}

/// A unit `u` mod `e` with `u·a = gcd(a, e)`.
fn normalizing_unit(a: u64, e: u64) -> u64 {
    let g = gcd(a, e);
    let m = e / g;
    if m == 1 {
        return 1;
    }
    let (_, s, _) = xgcd((a / g) as i128, m as i128);
    let base = md(s, m);
    (0..)
        .map(|k| base + k * m)
        .find(|&u| gcd(u, e) == 1)
        .expect("a unit lifting an invertible residue exists")
}

/// Echelon basis of a row span in `(Z/e)^width`, saturated so that the rows
/// with zeros in the first `k` columns span the part of the module vanishing
/// there, for every `k`.
#[derive(Debug, Clone)]
pub struct Howell {
    modulus: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Howell {
    pub fn new(pool: Vec<Vec<u64>>, width: usize, e: u64) -> Self {
        assert!((1..1 << 31).contains(&e), "modulus out of range");
        let mut pool: Vec<Vec<u64>> = pool
            .into_iter()
            .map(|r| {
                debug_assert_eq!(r.len(), width);
                r.into_iter().map(|x| x % e).collect::<Vec<_>>()
            })
            .filter(|r| !is_zero(r))
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..width {
            let mut pivot: Option<Vec<u64>> = None;
            let mut rest = Vec::with_capacity(pool.len());
            for r in pool.drain(..) {
                if r[col] == 0 {
                    rest.push(r);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(r),
                    Some(p) => {
                        let (a, b) = (p[col] as i128, r[col] as i128);
                        let (g, s, t) = xgcd(a, b);
                        let merged = lin(s, &p, t, &r, e);
                        let cleared = lin(b / g, &p, -(a / g), &r, e);
                        if !is_zero(&cleared) {
                            rest.push(cleared);
                        }
                        pivot = Some(merged);
                    }
                }
            }
            pool = rest;
            let Some(p) = pivot else { continue };
            let p = scale(normalizing_unit(p[col], e), &p, e);
            if p[col] == 0 {
                continue;
            }
            let annihilated = scale(e / p[col], &p, e);
            if !is_zero(&annihilated) {
                pool.push(annihilated);
            }
            rows.push(p);
            pivots.push(col);
        }
        for j in 0..rows.len() {
            let (p, a) = (pivots[j], rows[j][pivots[j]]);
            for i in 0..j {
                let q = rows[i][p] / a;
                if q > 0 {
                    rows[i] = lin(1, &rows[i].clone(), -(q as i128), &rows[j], e);
                }
            }
        }
        Howell { modulus: e, rows, pivots }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by the pivot rows with pivot column below `prefix`.
    /// Returns true when the first `prefix` entries end up zero, which
    /// happens exactly when `v` agrees on them with an element of the span.
    pub fn reduce(&self, v: &mut [u64], prefix: usize) -> bool {
        let e = self.modulus;
        for x in v.iter_mut() {
            *x %= e;
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if p >= prefix {
                break;
            }
            let a = row[p];
            if v[p] % a != 0 {
                continue;
            }
            let q = (v[p] / a) as i128;
            for (x, &y) in v.iter_mut().zip(row) {
                *x = md(*x as i128 - q * y as i128, e);
            }
        }
        is_zero(&v[..prefix])
    }

    /// Right-hand parts of the rows vanishing on the first `prefix` columns.
    pub fn tail_rows(&self, prefix: usize) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().zip(&self.pivots).filter(move |(_, &p)| p >= prefix).map(move |(r, _)| &r[prefix..])
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        let n = v.len();
        self.reduce(&mut v, n)
    }
}

/// Smith form of `(Z/e)^r / span(relations)`: cyclic orders `d_i` forming a
/// divisibility chain, with `c -> c·col_basis` giving coordinates and the
/// rows of `generators` the matching generators.
#[derive(Debug, Clone)]
pub struct Smith {
    pub orders: Vec<u64>,
    pub col_basis: Vec<Vec<u64>>,
    pub generators: Vec<Vec<u64>>,
}

impl Smith {
    pub fn new(relations: Vec<Vec<u64>>, r: usize, e: u64) -> Self {
        let mut a: Vec<Vec<i128>> = relations.into_iter().map(|row| row.into_iter().map(|x| (x % e) as i128).collect()).collect();
        let m = a.len();
        let ei = e as i128;
        let modv = |x: i128| x.rem_euclid(ei);
        // col_basis C and its inverse, so that coordinates are c·C
        let mut c: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
        let mut c_inv = c.clone();

        let col_op = |a: &mut Vec<Vec<i128>>, c: &mut Vec<Vec<i128>>, c_inv: &mut Vec<Vec<i128>>, i: usize, j: usize, x: i128, y: i128| {
            // columns (i, j) <- (s·ci + t·cj, -(y/g)·ci + (x/g)·cj)
            let (g, s, t) = elimination(x, y);
            let (yg, xg) = (y / g, x / g);
            for row in a.iter_mut().chain(c.iter_mut()) {
                let (u, v) = (row[i], row[j]);
                row[i] = modv(s * u + t * v);
                row[j] = modv(-yg * u + xg * v);
            }
            let (ri, rj) = (c_inv[i].clone(), c_inv[j].clone());
            for k in 0..r {
                c_inv[i][k] = modv(xg * ri[k] + yg * rj[k]);
                c_inv[j][k] = modv(-t * ri[k] + s * rj[k]);
            }
        };

        let mut diag = vec![0i128; r];
        let mut t = 0;
        while t < m.min(r) {
            let Some((pi, pj)) = (t..m).flat_map(|i| (t..r).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != 0) else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut().chain(c.iter_mut()) {
                    row.swap(t, pj);
                }
                c_inv.swap(t, pj);
            }
            loop {
                for i in t + 1..m {
                    if a[i][t] != 0 {
                        let (x, y) = (a[t][t], a[i][t]);
                        let (g, s, u) = elimination(x, y);
                        let (rt, ri) = (a[t].clone(), a[i].clone());
                        for k in 0..r {
                            a[t][k] = modv(s * rt[k] + u * ri[k]);
                            a[i][k] = modv((y / g) * rt[k] - (x / g) * ri[k]);
                        }
                    }
                }
                let mut dirty = false;
                for j in t + 1..r {
                    if a[t][j] != 0 {
                        let (x, y) = (a[t][t], a[t][j]);
                        col_op(&mut a, &mut c, &mut c_inv, t, j, x, y);
                        dirty = true;
                    }
                }
                if !dirty || (t + 1..m).all(|i| a[i][t] == 0) {
                    break;
                }
            }
            diag[t] = a[t][t];
            t += 1;
        }
        let mut orders: Vec<u64> = diag.iter().map(|&d| gcd(d as u64, e)).map(|g| if g == 0 { e } else { g }).collect();
        for i in 0..r {
            for j in i + 1..r {
                let (x, y) = (orders[i], orders[j]);
                if y % x == 0 {
                    continue;
                }
                let g = gcd(x, y);
                col_op(&mut vec![], &mut c, &mut c_inv, i, j, x as i128, y as i128);
                orders[i] = g;
                orders[j] = x / g * y;
            }
        }
        let keep: Vec<usize> = (0..r).filter(|&i| orders[i] != 1).collect();
        let col_basis = (0..r).map(|k| keep.iter().map(|&i| c[k][i] as u64).collect()).collect();
        let generators = keep.iter().map(|&i| c_inv[i].iter().map(|&x| x as u64).collect()).collect();
        Smith { orders: keep.iter().map(|&i| orders[i]).collect(), col_basis, generators }
    }

    /// Coordinates of `c` in the cyclic summands.
    pub fn coordinates(&self, c: &[u64]) -> Vec<u64> {
        self.orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let s: u128 = c.iter().zip(&self.col_basis).map(|(&x, row)| x as u128 * row[i] as u128).sum();
                (s % d as u128) as u64
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_kernel_rows() {
        // span of (2, 1) in (Z/4)^2 contains (0, 2)
        let h = Howell::new(vec![vec![2, 1]], 2, 4);
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[0, 1]));
        assert_eq!(h.tail_rows(1).count(), 1);
    }

    #[test]
    fn smith_of_small_relations() {
        // Z^2 / <(2, 0), (0, 3)> mod 6 is Z/6
        let s = Smith::new(vec![vec![2, 0], vec![0, 3]], 2, 6);
        assert_eq!(s.orders, vec![6]);
        // Z/4 / <2> is Z/2, plus a free Z/4 column
        let s = Smith::new(vec![vec![2, 0]], 2, 4);
        assert_eq!(s.orders, vec![2, 4]);
        for (g, &d) in s.generators.iter().zip(&s.orders) {
            let coords = s.coordinates(g);
            assert_eq!(coords.iter().filter(|&&x| x != 0).count(), 1);
            assert!(coords.iter().all(|&x| x < d));
        }
    }
}
