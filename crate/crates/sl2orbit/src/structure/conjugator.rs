//! Explicit orbit-membership certificates: solve g A_j = B_j g for an
//! invertible g.
//!
//! The equations are linear in the four entries of g, so the candidates form
//! the nullspace of a stacked 4n x 4 system M. The nullspace is read off the
//! small eigenvalues of the 4 x 4 Hermitian matrix H = M* M (a hand-rolled
//! complex Jacobi eigensolver keeps the dependency footprint at zero), and an
//! invertible element of it is located by a deterministic combination search;
//! det restricted to a subspace is a quadratic form, so generic combinations
//! find an invertible element whenever one exists. Every candidate is
//! verified by the residuals ||g A_j - B_j g|| before being returned, which
//! makes the rank threshold uncritical.

use crate::mat2::{Mat2, C64, ONE, ZERO};
use crate::tuple::NTuple;
use crate::{Error, Result, Tolerances};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Eigendecomposition of a 4x4 complex Hermitian matrix by cyclic Jacobi
/// rotations. Returns (eigenvalues ascending, eigenvectors as columns).
pub(crate) fn hermitian_eigen_4(h: &[[C64; 4]; 4]) -> ([f64; 4], [[C64; 4]; 4]) {
    let mut a = *h;
    let mut v = [[ZERO; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = ONE;
    }
    let total: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum();
    for _ in 0..60 {
        let off: f64 = (0..4)
            .flat_map(|p| ((p + 1)..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off <= 1e-28 * total.max(1.0) {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let u = apq / mag;
                let tau = (a[q][q].re - a[p][p].re) / (2.0 * mag);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Right-multiply A and V by the plane rotation, then
                // left-multiply A by its adjoint.
                for r in 0..4 {
                    let (ap, aq) = (a[r][p], a[r][q]);
                    a[r][p] = ap * c - aq * u.conj() * s;
                    a[r][q] = ap * u * s + aq * c;
                    let (vp, vq) = (v[r][p], v[r][q]);
                    v[r][p] = vp * c - vq * u.conj() * s;
                    v[r][q] = vp * u * s + vq * c;
                }
                let (row_p, row_q) = (a[p], a[q]);
                for (col, (&rp, &rq)) in row_p.iter().zip(&row_q).enumerate() {
                    a[p][col] = rp * c - rq * u * s;
                    a[q][col] = rp * u.conj() * s + rq * c;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].re.partial_cmp(&a[j][j].re).unwrap());
    let mut values = [0.0f64; 4];
    let mut vectors = [[ZERO; 4]; 4];
    for (slot, &idx) in order.iter().enumerate() {
        values[slot] = a[idx][idx].re;
        for r in 0..4 {
            vectors[r][slot] = v[r][idx];
        }
    }
    (values, vectors)
}

/// Rows of the homogeneous system for one equation g A - B g = 0, in the
/// unknowns (g11, g12, g21, g22).
fn equation_rows(a: &Mat2, b: &Mat2) -> [[C64; 4]; 4] {
    [
        [a.a - b.a, a.c, -b.b, ZERO],
        [a.b, a.d - b.a, ZERO, -b.b],
        [-b.c, ZERO, a.a - b.d, a.c],
        [ZERO, -b.c, a.b, a.d - b.d],
    ]
}

fn residual(g: &Mat2, a: &NTuple, b: &NTuple) -> f64 {
    let mut worst: f64 = 0.0;
    for (x, y) in a.entries().iter().zip(b.entries().iter()) {
        let lhs = *g * *x;
        let rhs = *y * *g;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    worst
}

fn candidate_from(coeffs: &[C64], basis: &[[C64; 4]]) -> Mat2 {
    let mut entries = [ZERO; 4];
    for (c, vec) in coeffs.iter().zip(basis.iter()) {
        for (e, x) in entries.iter_mut().zip(vec.iter()) {
            *e += *c * *x;
        }
    }
    Mat2::new(entries[0], entries[1], entries[2], entries[3])
}

/// Find g with det g = 1 and g A_j g^{-1} = B_j for all j, or None when the
/// tuples are not conjugate. Absence is certified by the nullspace of the
/// stacked linear system containing no invertible element (for stable tuples
/// any nonzero intertwiner is automatically invertible).
pub fn conjugator(a: &NTuple, b: &NTuple, tols: &Tolerances) -> Result<Option<Mat2>> {
    if a.n() != b.n() {
        return Err(Error::InvalidInput("tuples have different lengths".into()));
    }
    let scale = a.max_norm().max(b.max_norm()).max(1.0);

    // H = M* M for the stacked 4n x 4 system, accumulated row by row.
    let mut h = [[ZERO; 4]; 4];
    for (x, y) in a.entries().iter().zip(b.entries().iter()) {
        for row in equation_rows(x, y) {
            for i in 0..4 {
                for j in 0..4 {
                    h[i][j] += row[i].conj() * row[j];
                }
            }
        }
    }
    let (values, vectors) = hermitian_eigen_4(&h);
    let sv: Vec<f64> = values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let threshold = tols.tol.sqrt() * sv[3].max(scale);
    let basis: Vec<[C64; 4]> = (0..4)
        .filter(|&i| sv[i] <= threshold)
        .map(|i| [vectors[0][i], vectors[1][i], vectors[2][i], vectors[3][i]])
        .collect();
    if basis.is_empty() {
        return Ok(None);
    }

    let mut combos: Vec<Vec<C64>> = Vec::new();
    let dim = basis.len();
    for i in 0..dim {
        let mut c = vec![ZERO; dim];
        c[i] = ONE;
        combos.push(c);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            for w in [ONE, -ONE, C64::new(0.0, 1.0)] {
                let mut c = vec![ZERO; dim];
                c[i] = ONE;
                c[j] = w;
                combos.push(c);
            }
        }
    }
    if dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..8 {
            combos.push(
                (0..dim)
                    .map(|_| crate::tuple::random_c64(&mut rng))
                    .collect(),
            );
        }
    }

    for coeffs in combos {
        let g = candidate_from(&coeffs, &basis);
        let gnorm = g.max_norm().max(1.0);
        let det = g.det();
        if det.norm() <= 1e-10 * gnorm * gnorm {
            continue;
        }
        let g = g.scale(ONE / det.sqrt());
        if residual(&g, a, b) <= tols.tol * scale * g.max_norm().max(1.0) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::random_sl2_tuple;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn mat_vec_residual(h: &[[C64; 4]; 4], v: &[[C64; 4]; 4], lambda: &[f64; 4]) -> f64 {
        let mut worst: f64 = 0.0;
        for col in 0..4 {
            for row in 0..4 {
                let mut hv = ZERO;
                for k in 0..4 {
                    hv += h[row][k] * v[k][col];
                }
                worst = worst.max((hv - v[row][col] * lambda[col]).norm());
            }
        }
        worst
    }

    #[test]
    fn jacobi_diagonal_input() {
        let mut h = [[ZERO; 4]; 4];
        for (i, val) in [4.0, 1.0, 3.0, 2.0].into_iter().enumerate() {
            h[i][i] = C64::new(val, 0.0);
        }
        let (values, vectors) = hermitian_eigen_4(&h);
        assert_eq!(values, [1.0, 2.0, 3.0, 4.0]);
        assert!(mat_vec_residual(&h, &vectors, &values) < 1e-12);
    }

    #[test]
    fn jacobi_random_gram_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let m: Vec<[C64; 4]> = (0..4)
            .map(|_| {
                [
                    crate::tuple::random_c64(&mut rng),
                    crate::tuple::random_c64(&mut rng),
                    crate::tuple::random_c64(&mut rng),
                    crate::tuple::random_c64(&mut rng),
                ]
            })
            .collect();
        let mut h = [[ZERO; 4]; 4];
        for row in &m {
            for i in 0..4 {
                for j in 0..4 {
                    h[i][j] += row[i].conj() * row[j];
                }
            }
        }
        let (values, vectors) = hermitian_eigen_4(&h);
        for w in values.windows(2) {
            assert!(w[0] <= w[1]);
        }
        assert!(values[0] > -1e-10, "Gram matrix is positive semidefinite");
        assert!(mat_vec_residual(&h, &vectors, &values) < 1e-10);
        // Columns are orthonormal.
        for i in 0..4 {
            for j in 0..4 {
                let mut dot = ZERO;
                for row in &vectors {
                    dot += row[i].conj() * row[j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - C64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn identical_tuples_give_identity_up_to_sign() {
        let a = random_sl2_tuple(5, 3);
        let g = conjugator(&a, &a, &tols()).unwrap().unwrap();
        let diff_plus = g.max_abs_diff(&Mat2::identity());
        let diff_minus = g.max_abs_diff(&Mat2::identity().scale(-ONE));
        assert!(diff_plus.min(diff_minus) < 1e-8);
    }

    #[test]
    fn recovers_a_random_conjugation() {
        let a = random_sl2_tuple(11, 4);
        let t = tols();
        let h = Mat2::from_real(2.0, 1.0, 1.0, 1.0);
        let b = a.conjugate(&h, t.tol).unwrap();
        let g = conjugator(&a, &b, &t).unwrap().unwrap();
        assert!((g.det() - ONE).norm() < 1e-9);
        assert!(a.conjugate(&g, t.tol).unwrap().max_abs_diff(&b).unwrap() < 1e-8);
    }

    #[test]
    fn scalar_commutant_pair_still_yields_identity() {
        // Two identity entries: the nullspace is all of C^4 and only the
        // combination search produces an invertible element.
        let a = NTuple::new(vec![Mat2::identity(), Mat2::identity()]).unwrap();
        let g = conjugator(&a, &a, &tols()).unwrap().unwrap();
        assert!((g.det() - ONE).norm() < 1e-10);
        assert!(residual(&g, &a, &a) < 1e-10);
    }

    #[test]
    fn distinct_orbits_get_none() {
        // The zero-trace triple vs its entry-3-transposed variant: these have
        // t_123 = +2 and -2, so they lie in distinct orbits of the same trace
        // fiber and no conjugator exists.
        let i = C64::new(0.0, 1.0);
        let a = NTuple::new(vec![
            Mat2::diag(i, -i),
            Mat2::new(ZERO, i, i, ZERO),
            Mat2::from_real(0.0, 1.0, -1.0, 0.0),
        ])
        .unwrap();
        let b = a.with_entry_transposed(3).unwrap();
        assert!(conjugator(&a, &b, &tols()).unwrap().is_none());
    }

    #[test]
    fn length_mismatch_is_invalid_input() {
        let a = random_sl2_tuple(1, 2);
        let b = random_sl2_tuple(1, 3);
        assert!(matches!(
            conjugator(&a, &b, &tols()),
            Err(Error::InvalidInput(_))
        ));
    }
}
