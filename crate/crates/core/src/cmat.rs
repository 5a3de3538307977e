//! Small dense complex matrices (4x4) and the spectral diagnostics used on
//! numerically computed monodromy: singular values via one-sided Jacobi, and
//! eigenvalues via the characteristic polynomial (Faddeev-LeVerrier) with
//! Durand-Kerner root finding.
//!
//! The eigenvalue route deliberately works on `M - Id`: the spectrum shift is
//! exact, and for the unipotent monodromies produced here the characteristic
//! coefficients of `M - Id` inherit the matrix's nilpotent structure instead
//! of suffering the cancellation that expanding `(x-1)^4` in the monomial
//! basis would cause.

use num_complex::Complex64 as C64;

pub const DIM: usize = 4;

/// Dense 4x4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat(pub [C64; DIM * DIM]);

impl CMat {
    pub fn zero() -> Self {
        CMat([C64::new(0.0, 0.0); DIM * DIM])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for k in 0..DIM * DIM {
            m.0[k] += o.0[k];
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut m = *self;
        for k in 0..DIM * DIM {
            m.0[k] -= o.0[k];
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for k in 0..DIM * DIM {
            m.0[k] *= s;
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..DIM {
                    m[(i, j)] += a * o[(k, j)];
                }
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..DIM).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_entry_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Gauss-Jordan inverse with partial pivoting. Panics on (numerically)
    /// singular input; all matrices inverted here are unit-triangular-like
    /// transports.
    pub fn inverse(&self) -> Self {
        let mut a = *self;
        let mut inv = Self::identity();
        for c in 0..DIM {
            let p = (c..DIM)
                .max_by(|&i, &j| a[(i, c)].norm().total_cmp(&a[(j, c)].norm()))
                .expect("nonempty range");
            assert!(a[(p, c)].norm() > 0.0, "singular matrix in CMat::inverse");
            if p != c {
                for j in 0..DIM {
                    let (x, y) = (a[(c, j)], a[(p, j)]);
                    a[(c, j)] = y;
                    a[(p, j)] = x;
                    let (x, y) = (inv[(c, j)], inv[(p, j)]);
                    inv[(c, j)] = y;
                    inv[(p, j)] = x;
                }
            }
            let d = a[(c, c)];
            for j in 0..DIM {
                a[(c, j)] /= d;
                inv[(c, j)] /= d;
            }
            for i in 0..DIM {
                if i != c {
                    let f = a[(i, c)];
                    if f.norm() == 0.0 {
                        continue;
                    }
                    for j in 0..DIM {
                        let t = a[(c, j)];
                        a[(i, j)] -= f * t;
                        let t = inv[(c, j)];
                        inv[(i, j)] -= f * t;
                    }
                }
            }
        }
        inv
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i * DIM + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i * DIM + j]
    }
}

/// Singular values in descending order, by one-sided Jacobi: unitary column
/// rotations drive all column pairs to orthogonality; the singular values are
/// the final column norms.
pub fn singular_values(m: &CMat) -> [f64; DIM] {
    let mut a = *m;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..DIM {
            for q in (p + 1)..DIM {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = C64::new(0.0, 0.0);
                for i in 0..DIM {
                    app += a[(i, p)].norm_sqr();
                    aqq += a[(i, q)].norm_sqr();
                    apq += a[(i, p)].conj() * a[(i, q)];
                }
                let scale = (app * aqq).sqrt();
                if apq.norm() <= 1e-30 || apq.norm() <= 1e-17 * scale {
                    continue;
                }
                off = off.max(apq.norm());
                // Diagonalize the 2x2 Hermitian Gram block [[app, apq], [conj(apq), aqq]]:
                // factor out the phase of apq, then apply the real Jacobi rotation.
                let phase_conj = (apq / apq.norm()).conj();
                let zeta = (aqq - app) / (2.0 * apq.norm());
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..DIM {
                    let vp = a[(i, p)];
                    let vq = a[(i, q)];
                    a[(i, p)] = c * vp - s * phase_conj * vq;
                    a[(i, q)] = s * vp + c * phase_conj * vq;
                }
            }
        }
        if off == 0.0 {
            break;
        }
    }
    let mut sv = [0.0f64; DIM];
    for (j, out) in sv.iter_mut().enumerate() {
        *out = (0..DIM).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
    }
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Coefficients `c_1..c_4` of the characteristic polynomial
/// `x^4 - c1 x^3 - c2 x^2 - c3 x - c4` via Faddeev-LeVerrier.
pub fn char_poly(a: &CMat) -> [C64; DIM] {
    let mut coeffs = [C64::new(0.0, 0.0); DIM];
    let mut m = *a;
    for (k, coeff) in coeffs.iter_mut().enumerate() {
        let c = m.trace() / (k as f64 + 1.0);
        *coeff = c;
        if k + 1 < DIM {
            let mut shifted = m;
            for i in 0..DIM {
                shifted[(i, i)] -= c;
            }
            m = a.mul(&shifted);
        }
    }
    coeffs
}

/// All four roots of the monic quartic `x^4 - c1 x^3 - c2 x^2 - c3 x - c4`
/// by Durand-Kerner iteration. Multiple roots converge linearly, so the
/// iteration count is generous; the polynomials here are 4x4
/// characteristic polynomials and cost nothing.
pub fn quartic_roots(coeffs: &[C64; DIM]) -> [C64; DIM] {
    let eval = |x: C64| -> C64 {
        let x2 = x * x;
        x2 * x2 - coeffs[0] * x2 * x - coeffs[1] * x2 - coeffs[2] * x - coeffs[3]
    };
    let seed = C64::new(0.4, 0.9);
    let mut roots = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..DIM {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..DIM {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-300 {
            break;
        }
    }
    roots
}

/// `|lambda_i(m) - 1|` for the four eigenvalues of `m`, descending. Computed
/// as the root magnitudes of the characteristic polynomial of `m - Id`.
pub fn eigenvalue_deviations_from_unity(m: &CMat) -> [f64; DIM] {
    let d = m.sub(&CMat::identity());
    let roots = quartic_roots(&char_poly(&d));
    let mut dev = [0.0f64; DIM];
    for (out, r) in dev.iter_mut().zip(roots) {
        *out = r.norm();
    }
    dev.sort_by(|x, y| y.total_cmp(x));
    dev
}
