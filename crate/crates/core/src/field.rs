//! Prime-field arithmetic and dense elimination over `F_p`.

/// The prime field `F_p` with `p < 2^31`. Elements are least nonnegative residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Caller guarantees `p` is prime; see [`is_prime`].
    pub const fn new(p: u32) -> Self {
        Self { p }
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary integer into the field.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Reduces a decimal literal (arbitrary length) into the field.
    pub fn from_decimal(self, digits: &str) -> u32 {
        digits.bytes().fold(0u32, |acc, b| {
            let d = (b - b'0') as u64;
            ((acc as u64 * 10 + d) % self.p as u64) as u32
        })
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-echelon form of a set of vectors over `F_p`, used to reduce vectors modulo a subspace.
///
/// Rows are kept fully reduced (reduced row echelon form), so a vector reduced against the
/// echelon has zeros in every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        Self {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place modulo the current row space.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                if r != 0 {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
    }

    /// Inserts a vector; returns true if it increased the rank.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pc]);
        for x in v.iter_mut().skip(pc) {
            *x = f.mul(*x, inv);
        }
        // keep the echelon fully reduced in the new pivot column
        for row in &mut self.rows {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, &r) in row.iter_mut().zip(&v).skip(pc) {
                if r != 0 {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank(field: PrimeField, width: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> usize {
    let mut rows: Vec<Vec<u32>> = rows.into_iter().collect();
    let f = field;
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]);
        let (done, rest) = rows.split_at_mut(rank + 1);
        let prow = &done[rank];
        for row in rest.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let factor = f.neg(f.mul(c, inv));
            for (x, &r) in row.iter_mut().zip(prow.iter()).skip(col) {
                if r != 0 {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
