use std::fmt;

use super::fp::Prime;
use super::series::{series_invert, TruncatedSeries};
use super::AlgebraError;

/// 3x3 matrix over F_p[t]/(t^{i+1}), stored flat for cheap hashing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3 {
    p: Prime,
    len: usize,
    // entry (r, c), coefficient k lives at (3r + c) * len + k
    coeffs: Vec<u32>,
}

impl Mat3 {
    pub fn from_entries(entries: [[TruncatedSeries; 3]; 3]) -> Result<Self, AlgebraError> {
        let p = entries[0][0].modulus();
        let prec = entries[0][0].precision();
        let mut coeffs = Vec::with_capacity(9 * (prec + 1));
        for e in entries.iter().flatten() {
            if e.modulus() != p {
                return Err(AlgebraError::ModulusMismatch);
            }
            if e.precision() != prec {
                return Err(AlgebraError::PrecisionMismatch { left: prec, right: e.precision() });
            }
            coeffs.extend_from_slice(e.coeffs());
        }
        Ok(Mat3 { p, len: prec + 1, coeffs })
    }

    /// Constant matrix from integer entries.
    pub fn from_ints(p: Prime, precision: usize, rows: [[i64; 3]; 3]) -> Self {
        let entries = rows.map(|row| row.map(|v| TruncatedSeries::constant(p, precision, v)));
        Mat3::from_entries(entries).expect("uniform entries")
    }

    pub fn identity(p: Prime, precision: usize) -> Self {
        Mat3::from_ints(p, precision, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.len - 1
    }

    pub fn entry(&self, r: usize, c: usize) -> TruncatedSeries {
        let start = (3 * r + c) * self.len;
        TruncatedSeries::from_raw(self.p, self.coeffs[start..start + self.len].to_vec())
    }

    pub fn entries(&self) -> [[TruncatedSeries; 3]; 3] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.entry(r, c)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity(self.p, self.precision())
    }

    /// Canonical byte encoding, used as a hash key for group elements.
    pub fn key(&self) -> Vec<u8> {
        if self.p.get() < 256 {
            self.coeffs.iter().map(|&c| c as u8).collect()
        } else {
            self.coeffs.iter().flat_map(|c| c.to_le_bytes()).collect()
        }
    }

    pub fn from_key(p: Prime, precision: usize, key: &[u8]) -> Self {
        let coeffs: Vec<u32> = if p.get() < 256 {
            key.iter().map(|&b| b as u32).collect()
        } else {
            key.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect()
        };
        assert_eq!(coeffs.len(), 9 * (precision + 1), "key length does not match precision");
        Mat3 { p, len: precision + 1, coeffs }
    }

    pub fn try_mul(&self, other: &Mat3) -> Result<Mat3, AlgebraError> {
        mat3_mul(self, other)
    }

    /// Product when both factors are known to be compatible.
    pub(crate) fn mul_unchecked(&self, other: &Mat3) -> Mat3 {
        let n = self.len;
        let p = self.p.get() as u64;
        // with p < 2^16 every partial sum fits in u64 without reducing until the end
        let lazy = p < (1 << 16);
        let mut acc = vec![0u64; 9 * n];
        for r in 0..3 {
            for m in 0..3 {
                let a = &self.coeffs[(3 * r + m) * n..(3 * r + m + 1) * n];
                for c in 0..3 {
                    let b = &other.coeffs[(3 * m + c) * n..(3 * m + c + 1) * n];
                    let out = &mut acc[(3 * r + c) * n..(3 * r + c + 1) * n];
                    for (i, &ai) in a.iter().enumerate() {
                        if ai == 0 {
                            continue;
                        }
                        for (j, &bj) in b[..n - i].iter().enumerate() {
                            out[i + j] += ai as u64 * bj as u64;
                            if !lazy {
                                out[i + j] %= p;
                            }
                        }
                    }
                }
            }
            for v in &mut acc[3 * r * n..3 * (r + 1) * n] {
                *v %= p;
            }
        }
        Mat3 { p: self.p, len: n, coeffs: acc.into_iter().map(|c| c as u32).collect() }
    }

    pub fn det(&self) -> TruncatedSeries {
        let e = self.entries();
        let m = |a: &TruncatedSeries, b: &TruncatedSeries| a.try_mul(b).expect("uniform entries");
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m(&e[r1][c1], &e[r2][c2]).try_sub(&m(&e[r1][c2], &e[r2][c1])).expect("uniform entries")
        };
        let t0 = m(&e[0][0], &minor(1, 2, 1, 2));
        let t1 = m(&e[0][1], &minor(1, 2, 0, 2));
        let t2 = m(&e[0][2], &minor(1, 2, 0, 1));
        t0.try_sub(&t1).and_then(|s| s.try_add(&t2)).expect("uniform entries")
    }

    pub fn inverse(&self) -> Result<Mat3, AlgebraError> {
        mat3_inverse(self)
    }

    pub fn truncate(&self, precision: usize) -> Result<Mat3, AlgebraError> {
        let entries = self.entries();
        let mut out = Vec::with_capacity(9);
        for e in entries.iter().flatten() {
            out.push(e.truncate(precision)?);
        }
        let mut it = out.into_iter();
        let entries = std::array::from_fn(|_| std::array::from_fn(|_| it.next().expect("nine entries")));
        Mat3::from_entries(entries)
    }

    pub fn pow(&self, mut e: u64) -> Mat3 {
        let mut acc = Mat3::identity(self.p, self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Result<Mat3, AlgebraError> {
    if a.p != b.p {
        return Err(AlgebraError::ModulusMismatch);
    }
    if a.len != b.len {
        return Err(AlgebraError::PrecisionMismatch { left: a.precision(), right: b.precision() });
    }
    Ok(a.mul_unchecked(b))
}

/// Inverse as adjugate / det.
pub fn mat3_inverse(a: &Mat3) -> Result<Mat3, AlgebraError> {
    let det = a.det();
    let dinv = series_invert(&det)?;
    let e = a.entries();
    let m = |x: &TruncatedSeries, y: &TruncatedSeries| x.try_mul(y).expect("uniform entries");
    let cof = |r: usize, c: usize| {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let d = m(&e[rs[0]][cs[0]], &e[rs[1]][cs[1]])
            .try_sub(&m(&e[rs[0]][cs[1]], &e[rs[1]][cs[0]]))
            .expect("uniform entries");
        if (r + c) % 2 == 1 {
            d.neg()
        } else {
            d
        }
    };
    // adj[r][c] = cofactor(c, r)
    let entries = std::array::from_fn(|r| std::array::from_fn(|c| m(&cof(c, r), &dinv)));
    Mat3::from_entries(entries)
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            let row: Vec<String> = (0..3).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
