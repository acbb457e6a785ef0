#![allow(dead_code, clippy::needless_range_loop)]

use sfclab_core::{LayoutMatrix, Step1Outcome, Transform};

pub type Dense = Vec<Vec<u64>>;

pub fn dense(m: &LayoutMatrix) -> Dense {
    let n = m.n();
    let flat = m.to_dense();
    (0..n)
        .map(|i| flat[i * n..(i + 1) * n].iter().map(|&v| v as u64).collect())
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn mat_mul(a: &Dense, b: &Dense, p: u64) -> Dense {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0; c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t] != 0 {
                for j in 0..c {
                    out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
                }
            }
        }
    }
    out
}

pub fn block(a: &Dense, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Dense {
    a[rows]
        .iter()
        .map(|row| row[cols.clone()].to_vec())
        .collect()
}

/// Explicit inverse by Gauss-Jordan on `[U | I]`.
pub fn invert(u: &Dense, p: u64) -> Dense {
    let r = u.len();
    let mut aug: Dense = (0..r)
        .map(|i| {
            let mut row = u[i].clone();
            row.extend((0..r).map(|j| (i == j) as u64));
            row
        })
        .collect();
    for col in 0..r {
        let pr = (col..r).find(|&i| aug[i][col] != 0).expect("invertible");
        aug.swap(col, pr);
        let inv = inv_mod(aug[col][col], p);
        for v in aug[col].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..r {
            if i != col && aug[i][col] != 0 {
                let f = aug[i][col];
                for j in 0..2 * r {
                    aug[i][j] = (aug[i][j] + (p - f) * aug[col][j]) % p;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// Rebuild the expected post-step matrix from the block equations
/// `L_1 NW = (U_1 G_1; 0 0)`, `B_1 = L_1 NE`, `N_1 = -SW U_1^{-1}`,
/// `I_1 = SW_rest + N_1 G_1`, `E_1 = SE + N_1 B_1`, and compare.
pub fn check_step1_equations(
    original: &LayoutMatrix,
    after: &LayoutMatrix,
    out: &Step1Outcome,
) -> Result<(), String> {
    let n = original.n();
    let h = n / 2;
    let p = original.field().modulus() as u64;
    let r = out.rank;
    let entries = out.log.entries();

    // L_1 from the NW-phase operations
    let mut l1: Dense = (0..h)
        .map(|i| (0..h).map(|j| (i == j) as u64).collect())
        .collect();
    for t in &entries[..out.nw_ops] {
        match *t {
            Transform::RowAxpy { dst, src, factor } => {
                if dst >= h || src >= h {
                    return Err(format!("NW phase touched row outside NW: {t}"));
                }
                for j in 0..h {
                    l1[dst][j] = (l1[dst][j] + factor as u64 * l1[src][j]) % p;
                }
            }
            Transform::RowSwap { a, b } => {
                if a >= h || b >= h {
                    return Err(format!("NW phase touched row outside NW: {t}"));
                }
                l1.swap(a, b);
            }
            Transform::RowScale { row, factor } => {
                for v in l1[row].iter_mut() {
                    *v = *v * factor as u64 % p;
                }
            }
            Transform::ColSwap { .. } => return Err("column swap during NW phase".into()),
        }
    }

    // column permutation applied at the end of the step
    let mut a = dense(original);
    for t in &entries[out.nw_ops..] {
        if let Transform::ColSwap { a: x, b: y } = *t {
            if x >= h || y >= h {
                return Err(format!("column swap outside NW: {t}"));
            }
            for row in a.iter_mut() {
                row.swap(x, y);
            }
        }
    }

    let nw = block(&a, 0..h, 0..h);
    let ne = block(&a, 0..h, h..n);
    let sw = block(&a, h..n, 0..h);
    let se = block(&a, h..n, h..n);

    let top_left = mat_mul(&l1, &nw, p);
    for i in 0..h {
        for j in 0..h {
            let v = top_left[i][j];
            if i >= r && v != 0 {
                return Err(format!("L_1 NW row {i} not zero"));
            }
            if i < r && j < r && ((j < i && v != 0) || (j == i && v == 0)) {
                return Err(format!(
                    "U_1 not upper triangular with nonzero diagonal at ({i},{j})"
                ));
            }
        }
    }
    let u1 = block(&top_left, 0..r, 0..r);
    let g1 = block(&top_left, 0..r, r..h);
    let b1 = mat_mul(&l1, &ne, p);
    let u1_inv = invert(&u1, p);
    let sw_piv = block(&sw, 0..h, 0..r);
    let n1: Dense = mat_mul(&sw_piv, &u1_inv, p)
        .into_iter()
        .map(|row| row.into_iter().map(|v| (p - v) % p).collect())
        .collect();
    let sw_rest = block(&sw, 0..h, r..h);
    let n1g1 = mat_mul(&n1, &g1, p);
    let n1b1 = mat_mul(&n1, &block(&b1, 0..r, 0..n - h), p);

    let got = dense(after);
    for i in 0..n {
        for j in 0..n {
            let want = match (i < h, j < h) {
                (true, true) => top_left[i][j],
                (true, false) => b1[i][j - h],
                (false, true) if j < r => 0,
                (false, true) => {
                    (sw_rest[i - h][j - r] + if r > 0 { n1g1[i - h][j - r] } else { 0 }) % p
                }
                (false, false) => {
                    (se[i - h][j - h] + if r > 0 { n1b1[i - h][j - h] } else { 0 }) % p
                }
            };
            if got[i][j] != want {
                return Err(format!(
                    "cell ({i},{j}): got {}, block equations give {want}",
                    got[i][j]
                ));
            }
        }
    }
    Ok(())
}

/// Zero-block shape after a step: SW zero in its first `r` columns, NW rows
/// `r..` zero.
pub fn step1_shape_holds(after: &LayoutMatrix, r: usize) -> bool {
    let h = after.n() / 2;
    let sw_ok = (h..2 * h).all(|i| (0..r).all(|j| after.at(i, j) == 0));
    let nw_ok = (r..h).all(|i| (0..h).all(|j| after.at(i, j) == 0));
    sw_ok && nw_ok
}
