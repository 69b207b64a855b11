//! Smith normal form over the integers, for abelian invariants of
//! finitely presented groups. Matrices here are small (tens of rows);
//! i128 arithmetic leaves ample headroom for the pivoting steps.

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Diagonal of the Smith normal form: nonnegative entries, each dividing
/// the next, padded with zeros up to min(rows, cols).
pub fn smith_normal_form(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    let mut t = 0;
    while t < n {
        // Pivot: entry of minimal absolute value in the working block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in &mut m {
            row.swap(t, pj);
        }
        // Reduce column and row against the pivot; repeat until clean,
        // since reduction can re-populate cleared entries.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        for row in &mut m {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag.resize(n, 0);
    // Enforce the divisibility chain with gcd/lcm swaps on the diagonal;
    // this preserves the cokernel.
    loop {
        let mut settled = true;
        for i in 0..diag.len().saturating_sub(1) {
            let (a, b) = (diag[i], diag[i + 1]);
            if a != 0 && b != 0 && b % a != 0 {
                let g = gcd(a, b);
                diag[i] = g;
                diag[i + 1] = a / g * b;
                settled = false;
            } else if a == 0 && b != 0 {
                diag.swap(i, i + 1);
                settled = false;
            }
        }
        if settled {
            break;
        }
    }
    diag
}
