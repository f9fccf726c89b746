use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{monomial_count, Polynomial, Ring};

/// `⊕ S(-a_i)`; the generator of summand `i` lives in degree `a_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        Self { twists }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }

    /// Least generator degree, `None` for the zero module.
    pub fn mindeg(&self) -> Option<i64> {
        self.twists.iter().copied().min()
    }

    pub fn maxdeg(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }

    /// `Hom(F, S)`: every twist negated.
    pub fn dual(&self) -> Self {
        Self::new(self.twists.iter().map(|a| -a).collect())
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self::new(self.twists.iter().map(|a| a + by).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        Self::new(twists)
    }

    /// `dim_K F_d` in a ring with `n` variables.
    pub fn hilbert(&self, n: usize, d: i64) -> u64 {
        self.twists.iter().map(|a| monomial_count(n, d - a)).sum()
    }
}

/// Degree-compatible matrix `source -> target` of homogeneous polynomials.
///
/// Entry `(i, j)` is zero or homogeneous of degree `source_j - target_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    ring: Ring,
    source: GradedFreeModule,
    target: GradedFreeModule,
    // row-major, target.rank() x source.rank()
    entries: Vec<Polynomial>,
}

impl GradedMap {
    pub fn new(
        ring: &Ring,
        source: GradedFreeModule,
        target: GradedFreeModule,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::LengthMismatch {
                expected: target.rank(),
                got: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(target.rank() * source.rank());
        for row in rows {
            if row.len() != source.rank() {
                return Err(Error::LengthMismatch {
                    expected: source.rank(),
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        let map = Self {
            ring: ring.clone(),
            source,
            target,
            entries,
        };
        map.check_degrees()?;
        Ok(map)
    }

    /// Builds a map from columns, inferring each column's source twist from its entries.
    /// Zero columns are dropped.
    pub fn from_columns(ring: &Ring, target: GradedFreeModule, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut twisted = Vec::new();
        for col in columns {
            if col.len() != target.rank() {
                return Err(Error::LengthMismatch {
                    expected: target.rank(),
                    got: col.len(),
                });
            }
            if let Some(d) = column_degree(&col, &target)? {
                twisted.push((d, col));
            }
        }
        Self::from_twisted_columns(ring, target, twisted)
    }

    pub fn from_twisted_columns(
        ring: &Ring,
        target: GradedFreeModule,
        columns: Vec<(i64, Vec<Polynomial>)>,
    ) -> Result<Self> {
        let source = GradedFreeModule::new(columns.iter().map(|(d, _)| *d).collect());
        let r = target.rank();
        let c = columns.len();
        let mut entries = vec![Polynomial::zero(ring); r * c];
        for (j, (_, col)) in columns.into_iter().enumerate() {
            if col.len() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    got: col.len(),
                });
            }
            for (i, p) in col.into_iter().enumerate() {
                entries[i * c + j] = p;
            }
        }
        let map = Self {
            ring: ring.clone(),
            source,
            target,
            entries,
        };
        map.check_degrees()?;
        Ok(map)
    }

    pub fn zero(ring: &Ring, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let entries = vec![Polynomial::zero(ring); source.rank() * target.rank()];
        Self {
            ring: ring.clone(),
            source,
            target,
            entries,
        }
    }

    pub fn identity(ring: &Ring, module: GradedFreeModule) -> Self {
        let r = module.rank();
        let mut m = Self::zero(ring, module.clone(), module);
        for i in 0..r {
            m.entries[i * r + i] = Polynomial::one(ring);
        }
        m
    }

    fn check_degrees(&self) -> Result<()> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let p = self.entry(i, j);
                if p.is_zero() {
                    continue;
                }
                let expected = self.source.twist(j) - self.target.twist(i);
                match p.homogeneous_degree()? {
                    Some(d) if d as i64 == expected => {}
                    Some(d) => {
                        return Err(Error::DegreeMismatch(format!(
                            "entry ({i}, {j}) = {p} has degree {d}, expected {expected}"
                        )))
                    }
                    None => return Err(Error::NotHomogeneous(p.to_string())),
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols() + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows()).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Position of some unit (nonzero constant) entry.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        let c = self.ncols();
        self.entries
            .iter()
            .position(Polynomial::is_unit)
            .map(|k| (k / c, k % c))
    }

    /// True when no entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().all(|p| p.constant_term() == 0)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedMap) -> Result<GradedMap> {
        if rhs.target != self.source {
            return Err(Error::AmbientMismatch(
                "composition of maps with mismatched modules".into(),
            ));
        }
        let (r, m, c) = (self.nrows(), self.ncols(), rhs.ncols());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..m {
                    let a = self.entry(i, k);
                    let b = rhs.entry(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.try_mul(b)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(GradedMap {
            ring: self.ring.clone(),
            source: rhs.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// `Hom(-, S)`: the transpose, from the dual of the target to the dual of the source.
    pub fn dual(&self) -> GradedMap {
        let (r, c) = (self.nrows(), self.ncols());
        let mut entries = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMap {
            ring: self.ring.clone(),
            source: self.target.dual(),
            target: self.source.dual(),
            entries,
        }
    }

    /// `[self | other]` for maps with a common target.
    pub fn hconcat(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.target != other.target {
            return Err(Error::AmbientMismatch("hconcat with different targets".into()));
        }
        let mut cols: Vec<(i64, Vec<Polynomial>)> = (0..self.ncols())
            .map(|j| (self.source.twist(j), self.column(j)))
            .collect();
        cols.extend((0..other.ncols()).map(|j| (other.source.twist(j), other.column(j))));
        Self::from_twisted_columns(&self.ring, self.target.clone(), cols)
    }

    /// Keeps the listed rows (in order); the source is unchanged.
    pub fn select_rows(&self, rows: &[usize]) -> GradedMap {
        let c = self.ncols();
        let mut entries = Vec::with_capacity(rows.len() * c);
        for &i in rows {
            entries.extend_from_slice(&self.entries[i * c..(i + 1) * c]);
        }
        GradedMap {
            ring: self.ring.clone(),
            source: self.source.clone(),
            target: GradedFreeModule::new(rows.iter().map(|&i| self.target.twist(i)).collect()),
            entries,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> GradedMap {
        let r = self.nrows();
        let mut entries = Vec::with_capacity(r * cols.len());
        for i in 0..r {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMap {
            ring: self.ring.clone(),
            source: GradedFreeModule::new(cols.iter().map(|&j| self.source.twist(j)).collect()),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn remove_row(&self, r: usize) -> GradedMap {
        let keep: Vec<usize> = (0..self.nrows()).filter(|&i| i != r).collect();
        self.select_rows(&keep)
    }

    pub fn remove_column(&self, c: usize) -> GradedMap {
        let keep: Vec<usize> = (0..self.ncols()).filter(|&j| j != c).collect();
        self.select_columns(&keep)
    }

    /// Eliminates the unit entry at `(r, c)`: the Schur complement with row `r` and column
    /// `c` removed.
    pub fn eliminate_unit(&self, r: usize, c: usize) -> GradedMap {
        let u = self.entry(r, c);
        debug_assert!(u.is_unit());
        let f = self.ring.field();
        let inv = f.inv(u.constant_term());
        let pivot_row: Vec<Polynomial> = (0..self.ncols()).map(|j| self.entry(r, j).scale(inv)).collect();
        let rows: Vec<usize> = (0..self.nrows()).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.ncols()).filter(|&j| j != c).collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in &rows {
            let a_ic = self.entry(i, c);
            for &j in &cols {
                let base = self.entry(i, j);
                if a_ic.is_zero() || pivot_row[j].is_zero() {
                    entries.push(base.clone());
                } else {
                    entries.push(base - &(a_ic * &pivot_row[j]));
                }
            }
        }
        GradedMap {
            ring: self.ring.clone(),
            source: GradedFreeModule::new(cols.iter().map(|&j| self.source.twist(j)).collect()),
            target: GradedFreeModule::new(rows.iter().map(|&i| self.target.twist(i)).collect()),
            entries,
        }
    }

    /// Drops all-zero columns.
    pub fn without_zero_columns(&self) -> GradedMap {
        let keep: Vec<usize> = (0..self.ncols())
            .filter(|&j| (0..self.nrows()).any(|i| !self.entry(i, j).is_zero()))
            .collect();
        if keep.len() == self.ncols() {
            return self.clone();
        }
        self.select_columns(&keep)
    }

    /// Replaces the target twists by shifting; entries are unchanged.
    pub fn shifted(&self, by: i64) -> GradedMap {
        GradedMap {
            ring: self.ring.clone(),
            source: self.source.shifted(by),
            target: self.target.shifted(by),
            entries: self.entries.clone(),
        }
    }
}

/// Internal degree of a column in `target`, `None` for a zero column.
pub fn column_degree(col: &[Polynomial], target: &GradedFreeModule) -> Result<Option<i64>> {
    let mut degree = None;
    for (i, p) in col.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = match p.homogeneous_degree()? {
            Some(d) => d as i64 + target.twist(i),
            None => return Err(Error::NotHomogeneous(p.to_string())),
        };
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::DegreeMismatch(format!(
                    "column entries have internal degrees {e} and {d}"
                )))
            }
            _ => {}
        }
    }
    Ok(degree)
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMap {:?} -> {:?}", self.source.twists(), self.target.twists())?;
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Homological complex of graded free modules `F_hi -> ... -> F_lo`.
///
/// Cohomological complexes are stored with negated indices.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Ring,
    lo: i64,
    modules: Vec<GradedFreeModule>,
    // differentials[k]: modules[k + 1] -> modules[k]
    differentials: Vec<GradedMap>,
}

impl FreeComplex {
    /// `differentials[k]` maps module `lo + k + 1` to module `lo + k`.
    pub fn new(ring: &Ring, lo: i64, modules: Vec<GradedFreeModule>, differentials: Vec<GradedMap>) -> Result<Self> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(Error::Input(format!(
                "complex with {} modules needs {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source() != &modules[k + 1] || d.target() != &modules[k] {
                return Err(Error::AmbientMismatch(format!(
                    "differential at index {} does not match its modules",
                    lo + k as i64 + 1
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            lo,
            modules,
            differentials,
        })
    }

    /// Single module in position `i`.
    pub fn concentrated(ring: &Ring, i: i64, module: GradedFreeModule) -> Self {
        Self {
            ring: ring.clone(),
            lo: i,
            modules: vec![module],
            differentials: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn module(&self, i: i64) -> GradedFreeModule {
        if i < self.lo || i > self.hi() {
            return GradedFreeModule::zero();
        }
        self.modules[(i - self.lo) as usize].clone()
    }

    /// `d_i: F_i -> F_{i-1}`; a zero map when either side is outside the range.
    pub fn differential(&self, i: i64) -> GradedMap {
        if i > self.lo && i <= self.hi() {
            return self.differentials[(i - self.lo - 1) as usize].clone();
        }
        GradedMap::zero(&self.ring, self.module(i), self.module(i - 1))
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    /// Checks `d_{i} ∘ d_{i+1} = 0` everywhere.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// True when every differential has entries in the irrelevant ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(GradedMap::is_minimal)
    }

    pub(crate) fn parts(&self) -> (&[GradedFreeModule], &[GradedMap]) {
        (&self.modules, &self.differentials)
    }
}

/// Graded module presented as the cokernel of `relations: F_1 -> F_0`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Ring,
    relations: GradedMap,
}

impl ModulePresentation {
    pub fn new(ring: &Ring, relations: GradedMap) -> Self {
        Self {
            ring: ring.clone(),
            relations,
        }
    }

    pub fn from_parts(ring: &Ring, generators: GradedFreeModule, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        Ok(Self::new(ring, GradedMap::from_columns(ring, generators, columns)?))
    }

    /// The free module itself.
    pub fn free(ring: &Ring, generators: GradedFreeModule) -> Self {
        Self::new(ring, GradedMap::zero(ring, GradedFreeModule::zero(), generators))
    }

    /// `S`.
    pub fn ring_itself(ring: &Ring) -> Self {
        Self::free(ring, GradedFreeModule::new(vec![0]))
    }

    /// `S / (gens)` for homogeneous `gens`.
    pub fn cyclic(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::from_parts(ring, GradedFreeModule::new(vec![0]), cols)
    }

    pub fn zero_module(ring: &Ring) -> Self {
        Self::free(ring, GradedFreeModule::zero())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &GradedMap {
        &self.relations
    }

    /// `M(by)`: all degrees lowered by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self::new(&self.ring, self.relations.shifted(-by))
    }
}
