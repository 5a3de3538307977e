//! Gamma-class integral structure: the solution map twisting the Chern
//! character, the outer-product Stokes matrix on K-classes, spherical twists,
//! and pairing-compatibility checks.
//!
//! Euler-pairing data is user input, never computed from sheaf theory; the
//! correspondence sending the spherical class to minus the vanishing cycle is
//! likewise input data with that fixed sign.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::IntersectionLattice;
use crate::operators::OperatorSet;
use crate::qmat::{dot, QMat, Rat};

/// zeta(3), for the degree-6 Gamma coefficient.
pub const ZETA_3: f64 = 1.2020569031595942;

/// Graded coefficients of the Gamma class on a Calabi-Yau threefold:
/// `1 + zeta(2)/(2 pi i)^2 ch2 + zeta(3)/(2 pi i)^3 ch3`, so g0 = 1 and
/// g2 = 0 (c1 = 0).
#[derive(Clone, Copy, Debug)]
pub struct GammaClass {
    pub g0: C64,
    pub g2: C64,
    pub g4: C64,
    pub g6: C64,
}

impl GammaClass {
    pub fn trivial() -> Self {
        GammaClass {
            g0: C64::new(1.0, 0.0),
            g2: C64::new(0.0, 0.0),
            g4: C64::new(0.0, 0.0),
            g6: C64::new(0.0, 0.0),
        }
    }

    pub fn graded(&self) -> [C64; 4] {
        [self.g0, self.g2, self.g4, self.g6]
    }
}

/// Gamma class from Chern character data. The degree-4 coefficient is the
/// exact rational `-ch2/24` (zeta(2)/(2 pi i)^2 = -1/24); the degree-6 one is
/// `i zeta(3) / (8 pi^3) ch3`.
pub fn gamma_class(ch2: C64, ch3: C64) -> GammaClass {
    let pi = std::f64::consts::PI;
    GammaClass {
        g0: C64::new(1.0, 0.0),
        g2: C64::new(0.0, 0.0),
        g4: ch2 * (-1.0 / 24.0),
        g6: ch3 * C64::new(0.0, ZETA_3 / (8.0 * pi * pi * pi)),
    }
}

/// Graded cup product: degree-indexed convolution truncated at degree 6
/// (index d stands for cohomological degree 2d).
pub fn cup(a: &[C64; 4], b: &[C64; 4]) -> [C64; 4] {
    let mut out = [C64::new(0.0, 0.0); 4];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            if i + j < 4 {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// The solution map on a graded vector: cup product with the Gamma class,
/// then per-degree scaling by `(2 pi i)^{-deg/2}`.
pub fn iritani_map(ch: &[C64; 4], gamma: &GammaClass) -> [C64; 4] {
    let product = cup(ch, &gamma.graded());
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut out = [C64::new(0.0, 0.0); 4];
    let mut scale = C64::new(1.0, 0.0);
    for (d, &v) in product.iter().enumerate() {
        out[d] = v * scale;
        if d < 3 {
            scale /= two_pi_i;
        }
    }
    out
}

/// Outer-product Stokes matrix on K-classes and its contraction.
#[derive(Clone, Debug)]
pub struct NIntResult {
    /// `(N_int)_{ij} = chi(gamma_i, S) chi(S, gamma_j)`.
    pub matrix: QMat,
    /// `c` with `N_int^2 = c N_int` (the inner contraction).
    pub contraction: Rat,
    /// `Id + N_int` is unipotent exactly when the contraction vanishes (the
    /// K-theoretic analogue of the vanishing self-pairing).
    pub unipotent: bool,
}

pub fn n_int(chi_with_s: &[Rat], chi_s_with: &[Rat]) -> Result<NIntResult> {
    if chi_with_s.len() != chi_s_with.len() {
        return Err(Error::DimensionMismatch(format!(
            "chi vectors of lengths {} and {}",
            chi_with_s.len(),
            chi_s_with.len()
        )));
    }
    let matrix = QMat::outer(chi_with_s, chi_s_with);
    let contraction = dot(chi_s_with, chi_with_s);
    let unipotent = contraction.is_zero();
    // rank <= 1 by construction; the square check is the exact identity
    // N^2 = c N.
    debug_assert!(matrix.rank() <= 1);
    debug_assert_eq!(matrix.mul(&matrix), matrix.scale(&contraction));
    Ok(NIntResult { matrix, contraction, unipotent })
}

/// Spherical twist on K-classes: `gamma - chi(S, gamma) S`, with
/// `chi(S, gamma) = s^T X gamma` for the user-provided Euler pairing X.
pub fn spherical_twist(gamma: &[Rat], s: &[Rat], euler_pairing: &QMat) -> Result<Vec<Rat>> {
    let n = euler_pairing.rows();
    if euler_pairing.cols() != n || gamma.len() != n || s.len() != n {
        return Err(Error::DimensionMismatch(
            "twist needs a square pairing matching the class vectors".into(),
        ));
    }
    let chi = dot(s, &euler_pairing.mul_vec(gamma));
    Ok(gamma.iter().zip(s).map(|(g, sv)| g - &chi * sv).collect())
}

/// The twist as a matrix: `Id - S (S^T X)` acting on K-coordinates.
pub fn spherical_twist_matrix(s: &[Rat], euler_pairing: &QMat) -> Result<QMat> {
    let n = euler_pairing.rows();
    if euler_pairing.cols() != n || s.len() != n {
        return Err(Error::DimensionMismatch("twist matrix shape mismatch".into()));
    }
    let row = euler_pairing.transpose().mul_vec(s); // (s^T X) as a vector
    Ok(QMat::identity(n).sub(&QMat::outer(s, &row)))
}

/// Decategorification data: a Chern-character correspondence from K-classes
/// to lattice coordinates, a spherical class, and the Euler pairing.
#[derive(Clone, Debug)]
pub struct Correspondence {
    /// Columns are ch(gamma_i) in lattice coordinates.
    pub ch: QMat,
    /// Spherical class in K-coordinates; `ch * s` must equal `-delta`.
    pub s: Vec<Rat>,
    pub euler_pairing: QMat,
}

/// Report of the decategorification square `ch . T_S = T_PL . ch`.
#[derive(Clone, Debug)]
pub struct DecategorificationReport {
    /// ch(S) = -delta holds for the checked cycle.
    pub sends_s_to_minus_delta: bool,
    /// The square commutes exactly as matrices.
    pub commutes: bool,
    /// Index of the cycle compared against.
    pub cycle: usize,
}

/// Verifies, in exact arithmetic, that the spherical twist of the
/// correspondence decategorifies to the Picard-Lefschetz operator of cycle
/// `k`: `ch(S) = -delta_k` and `ch . (Id - S s^T X) = (Id + N_k) . ch`.
pub fn decategorification_check(
    lattice: &IntersectionLattice,
    corr: &Correspondence,
    ops: &OperatorSet,
    k: usize,
) -> Result<DecategorificationReport> {
    let n = lattice.rank();
    if corr.ch.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "ch maps into rank-{} lattice, matrix has {} rows",
            n,
            corr.ch.rows()
        )));
    }
    let delta = ops.config().cycle(k)?;
    let ch_s = corr.ch.mul_vec(&corr.s);
    let minus_delta: Vec<Rat> = delta.iter().map(|x| -x.clone()).collect();
    let sends = ch_s == minus_delta;

    let twist = spherical_twist_matrix(&corr.s, &corr.euler_pairing)?;
    let t_pl = ops.pl_operator(k)?;
    let commutes = corr.ch.mul(&twist) == t_pl.mul(&corr.ch);
    Ok(DecategorificationReport { sends_s_to_minus_delta: sends, commutes, cycle: k })
}

/// Report of the Euler-pairing / flat-pairing compatibility
/// `chi(E,F) = (-1)^3 <s(E), s(F)>_flat`.
#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub pass: bool,
    /// Offending entries (i, j) for exact data, or the max deviation for
    /// floating-point data.
    pub failures: Vec<(usize, usize)>,
    pub max_deviation: f64,
}

/// Exact check: `X == -(S^T G S)` entrywise, where columns of `S` are the
/// solution coordinates and `G` is the flat pairing.
pub fn pairing_compatibility_exact(
    chi: &QMat,
    solutions: &QMat,
    flat_pairing: &QMat,
) -> Result<CompatibilityReport> {
    if solutions.rows() != flat_pairing.rows() || chi.rows() != solutions.cols() {
        return Err(Error::DimensionMismatch("pairing compatibility shapes".into()));
    }
    let gram = solutions.transpose().mul(&flat_pairing.mul(solutions));
    let mut failures = Vec::new();
    for i in 0..chi.rows() {
        for j in 0..chi.cols() {
            if chi[(i, j)] != -gram[(i, j)].clone() {
                failures.push((i, j));
            }
        }
    }
    Ok(CompatibilityReport { pass: failures.is_empty(), failures, max_deviation: 0.0 })
}

/// Floating-point check within the given tolerance.
pub fn pairing_compatibility_f64(
    chi: &[Vec<C64>],
    solutions: &[Vec<C64>],
    flat_pairing: &[Vec<C64>],
    tol: f64,
) -> Result<CompatibilityReport> {
    let m = solutions.len();
    let k = solutions.first().map_or(0, Vec::len);
    if chi.len() != k || flat_pairing.len() != m {
        return Err(Error::DimensionMismatch("pairing compatibility shapes".into()));
    }
    let mut failures = Vec::new();
    let mut max_dev = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let mut gram = C64::new(0.0, 0.0);
            for a in 0..m {
                for b in 0..m {
                    gram += solutions[a][i] * flat_pairing[a][b] * solutions[b][j];
                }
            }
            let dev = (chi[i][j] + gram).norm();
            max_dev = max_dev.max(dev);
            if dev > tol {
                failures.push((i, j));
            }
        }
    }
    Ok(CompatibilityReport { pass: failures.is_empty(), failures, max_deviation: max_dev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::qmat::q;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn gamma_coefficients() {
        let trivial = gamma_class(c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(trivial.graded(), GammaClass::trivial().graded());

        // zeta(2)/(2 pi i)^2 = -1/24, so ch2 = 24 gives g4 = -1.
        let g = gamma_class(c(24.0, 0.0), c(0.0, 0.0));
        assert!((g.g4 - c(-1.0, 0.0)).norm() < 1e-15);

        // ch3 = 1 gives g6 = i zeta(3) / (8 pi^3).
        let pi = std::f64::consts::PI;
        let g = gamma_class(c(0.0, 0.0), c(1.0, 0.0));
        assert!((g.g6 - c(0.0, ZETA_3 / (8.0 * pi * pi * pi))).norm() < 1e-18);
    }

    #[test]
    fn iritani_map_basics() {
        let unit = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(iritani_map(&unit, &GammaClass::trivial()), unit);

        // Point class: the degree-6 slot is scaled by (2 pi i)^{-3}.
        let point = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let s = iritani_map(&point, &GammaClass::trivial());
        let two_pi_i = c(0.0, 2.0 * std::f64::consts::PI);
        let expect = c(1.0, 0.0) / (two_pi_i * two_pi_i * two_pi_i);
        assert!((s[3] - expect).norm() < 1e-18);
        assert!(s[0].norm() + s[1].norm() + s[2].norm() < 1e-18);
    }

    #[test]
    fn iritani_map_is_linear() {
        let gamma = gamma_class(c(2.0, 1.0), c(0.0, -3.0));
        let x = [c(1.0, 2.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.5, 0.5)];
        let y = [c(0.0, -1.0), c(2.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)];
        let (a, b) = (c(2.0, -1.0), c(0.0, 3.0));
        let mut combo = [c(0.0, 0.0); 4];
        for i in 0..4 {
            combo[i] = a * x[i] + b * y[i];
        }
        let lhs = iritani_map(&combo, &gamma);
        let sx = iritani_map(&x, &gamma);
        let sy = iritani_map(&y, &gamma);
        for i in 0..4 {
            assert!((lhs[i] - (a * sx[i] + b * sy[i])).norm() < 1e-12);
        }
    }

    #[test]
    fn cup_is_commutative_and_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut sample = || -> [C64; 4] {
            std::array::from_fn(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        };
        for _ in 0..50 {
            let (a, b, cc) = (sample(), sample(), sample());
            let ab = cup(&a, &b);
            let ba = cup(&b, &a);
            for i in 0..4 {
                assert!((ab[i] - ba[i]).norm() < 1e-12);
            }
            // Truncation keeps associativity: the grading is nonnegative, so
            // every retained term of (ab)c already appears in a(bc).
            let left = cup(&ab, &cc);
            let right = cup(&a, &cup(&b, &cc));
            for i in 0..4 {
                assert!((left[i] - right[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn n_int_outer_product() {
        let col = vec![q(0), q(0), q(0), q(1)];
        let row = vec![q(1), q(0), q(0), q(0)];
        let res = n_int(&col, &row).unwrap();
        assert_eq!(res.matrix[(3, 0)], q(1));
        assert!(res.matrix.mul(&res.matrix).is_zero());
        assert!(res.unipotent);

        let zero = n_int(&vec![q(0); 4], &vec![q(0); 4]).unwrap();
        assert!(zero.matrix.is_zero());

        let res = n_int(&[q(1), q(2)], &[q(3), q(-1)]).unwrap();
        assert_eq!(res.contraction, q(1));
        assert!(!res.unipotent);
        assert_eq!(res.matrix.mul(&res.matrix), res.matrix.scale(&res.contraction));

        assert!(n_int(&[q(1)], &[q(1), q(2)]).is_err());
    }

    #[test]
    fn twist_fixed_points() {
        // chi(S, S) = 0 for the spherical class in this skew shadow: the
        // twist fixes S.
        let pairing = QMat::from_i64(&[&[0, 1], &[-1, 0]]);
        let s = vec![q(1), q(0)];
        assert_eq!(spherical_twist(&s, &s, &pairing).unwrap(), s);

        // chi(S, gamma) = 0 leaves gamma unchanged: with s = e1 the pairing
        // row is (0, 1), so any gamma with vanishing second coordinate is
        // fixed.
        let gamma = vec![q(5), q(0)];
        assert_eq!(spherical_twist(&gamma, &s, &pairing).unwrap(), gamma);

        // Nonzero chi actually moves the class.
        let moved = spherical_twist(&[q(0), q(1)], &s, &pairing).unwrap();
        assert_eq!(moved, vec![q(-1), q(1)]);
    }

    #[test]
    fn decategorification_square_commutes() {
        // Sample correspondence for the single-node preset: ch = Id,
        // s = e1 in K-coordinates, delta = -ch(s), and the Euler pairing row
        // s^T X = ch^T P delta so that chi(S, .) = <ch(.), delta>.
        let cfg = presets::single_node();
        let ops = OperatorSet::new(cfg.clone()).unwrap();
        let lat = cfg.lattice();
        let ch = QMat::identity(4).scale(&q(-1)); // ch(gamma_i) = -e_i
        let s = vec![q(1), q(0), q(0), q(0)]; // ch(s) = -e0 = -delta
        let delta = cfg.cycle(0).unwrap().to_vec();
        // Build X with rows: X[i][j] = chi(gamma_i, gamma_j) only needs the
        // s-row to be right; set X = s (ch^T P delta)^T-compatible matrix.
        let target_row = ch.transpose().mul_vec(&lat.pairing_matrix().mul_vec(&delta));
        let x = QMat::outer(&s, &target_row);
        let corr = Correspondence { ch, s, euler_pairing: x };
        let rep = decategorification_check(lat, &corr, &ops, 0).unwrap();
        assert!(rep.sends_s_to_minus_delta);
        assert!(rep.commutes);
    }

    #[test]
    fn decategorification_commutes_for_any_intertwining_data() {
        // For any ch matrix C with C s = -delta and any Euler pairing X whose
        // s-row satisfies s^T X = (P delta)^T C, the square commutes:
        // C (Id - s s^T X) = (Id + N) C.
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let cfg = crate::presets::random_config(&mut rng, 6, 1);
            let n = cfg.rank();
            let ops = OperatorSet::new(cfg.clone()).unwrap();
            let delta = cfg.cycle(0).unwrap().to_vec();
            let m = rng.gen_range(0..n);
            let mut ch = QMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    ch[(i, j)] = q(rng.gen_range(-3..=3));
                }
            }
            // Spherical class = K-basis vector e_m; force ch(s) = -delta.
            let mut s = vec![q(0); n];
            s[m] = q(1);
            for i in 0..n {
                ch[(i, m)] = -delta[i].clone();
            }
            // Overwrite the s-row of X with the intertwining row.
            let target = ch
                .transpose()
                .mul_vec(&cfg.lattice().pairing_matrix().mul_vec(&delta));
            let mut x = QMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    x[(i, j)] = q(rng.gen_range(-3..=3));
                }
            }
            for j in 0..n {
                x[(m, j)] = target[j].clone();
            }
            let corr = Correspondence { ch, s, euler_pairing: x };
            let rep =
                decategorification_check(cfg.lattice(), &corr, &ops, 0).unwrap();
            assert!(rep.sends_s_to_minus_delta);
            assert!(rep.commutes);
        }
    }

    #[test]
    fn pairing_compatibility_modes() {
        // Trivial consistent bundle.
        let sols = QMat::identity(2);
        let flat = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        let chi = flat.scale(&q(-1));
        let rep = pairing_compatibility_exact(&chi, &sols, &flat).unwrap();
        assert!(rep.pass);

        // Sign-flipped input fails.
        let rep = pairing_compatibility_exact(&flat, &sols, &flat).unwrap();
        assert!(!rep.pass);
        assert!(!rep.failures.is_empty());

        // Float mode.
        let sols_f = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
        let flat_f = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
        let chi_f = vec![vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]];
        let rep = pairing_compatibility_f64(&chi_f, &sols_f, &flat_f, 1e-10).unwrap();
        assert!(rep.pass);
    }
}
