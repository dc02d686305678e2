use crate::poly::{Poly, Variable};

/// Resultant of `p` and `q` in `x` as the determinant of their Sylvester matrix,
/// computed by fraction-free elimination.
pub fn sylvester_resultant<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Poly<V> {
    if p.is_zero() || q.is_zero() {
        return Poly::zero();
    }
    let m = p.degree(x) as usize;
    let n = q.degree(x) as usize;
    if m == 0 {
        return p.pow(n as u32);
    }
    if n == 0 {
        return q.pow(m as u32);
    }
    let size = m + n;
    let pc = p.coefficients(x);
    let qc = q.coefficients(x);
    let mut a = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().enumerate() {
            a[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().enumerate() {
            a[n + i][i + n - k] = c.clone();
        }
    }
    bareiss(a)
}

fn bareiss<V: Variable>(mut a: Vec<Vec<Poly<V>>>) -> Poly<V> {
    let size = a.len();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("exact division");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
