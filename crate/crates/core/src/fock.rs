//! The truncated deformed full Fock space.
//!
//! Basis tensors `e_{u(1)} ⊗ ... ⊗ e_{u(k)}` are indexed by words, the vacuum `Ω` by the
//! empty word. The data are diagonal weights `C^(k)` (one `C_u` per word of length `k`)
//! and interaction matrices `T_i^(k)` acting on level `k`. With the kernel
//! `K_{C,u} = ∏_j C_{(u(j),...,u(k))}` the deformed inner product is
//! `⟨e_u, e_v⟩_C = δ_{u,v} K_{C,u}`, and the operators
//! `X_i = a_i⁺ + T_i + ã_i⁻` are symmetric for it. The Fock state is
//! `φ(P) = ⟨Ω, P(X) Ω⟩_C`.
//!
//! Only levels `0..=depth` are stored. That is enough for every moment of degree
//! `<= 2·depth + 1`: a walk of length `m` from `Ω` back to `Ω` never climbs above level
//! `⌊m/2⌋`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mops::{orthogonality_witness, MonicFamily, Verdict, Witness};
use crate::ncpoly::{enumerate_words, words_of_length, NcPolynomial, Word};
use crate::rational::{format_rational, is_negative, Rational};
use crate::state::State;

/// A finitely supported vector in the algebraic Fock space.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    d: usize,
    coeffs: BTreeMap<Word, Rational>,
}

impl FockVector {
    pub fn zero(d: usize) -> Self {
        FockVector {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vacuum(d: usize) -> Self {
        Self::basis(Word::empty(d))
    }

    pub fn basis(u: Word) -> Self {
        let mut v = Self::zero(u.d());
        v.coeffs.insert(u, Rational::one());
        v
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, u: &Word) -> Rational {
        self.coeffs.get(u).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    /// Highest level with a nonzero component.
    pub fn max_level(&self) -> Option<usize> {
        self.coeffs.keys().next_back().map(Word::len)
    }

    pub fn add_term(&mut self, u: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(u) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &FockVector) {
        for (u, a) in &other.coeffs {
            self.add_term(u.clone(), c * a);
        }
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(u, c)| format!("{}·e{}", format_rational(c), u))
            .collect();
        write!(f, "FockVector[{}]", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockData {
    d: usize,
    depth: usize,
    c: HashMap<Word, Rational>,
    /// `c_levels[k][j]` is `C_u` for the `j`-th word of length `k` (level 0 unused).
    c_levels: Vec<Vec<Rational>>,
    /// `t[i - 1][k]` is `T_i^(k)`; entry `(w, u)` is the coefficient of `e_w` in `T_i e_u`.
    t: Vec<Vec<RatMatrix>>,
}

impl FockData {
    /// Structural checks only (every `C_u` present for `1 <= |u| <= depth`, matrix shapes
    /// `d^k × d^k`). See [`validate_fock_data`] for the positivity and transpose conditions.
    pub fn new(
        d: usize,
        depth: usize,
        c: impl IntoIterator<Item = (Word, Rational)>,
        t: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut cmap = HashMap::new();
        for (u, v) in c {
            if u.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: u.d() });
            }
            if u.is_empty() || u.len() > depth {
                return Err(Error::InvalidFockData(format!("C is indexed by words of length 1..={depth}, got {u}")));
            }
            cmap.insert(u, v);
        }
        for u in enumerate_words(d, depth).into_iter().skip(1) {
            if !cmap.contains_key(&u) {
                return Err(Error::InvalidFockData(format!("missing C_{u}")));
            }
        }
        if t.len() != d {
            return Err(Error::InvalidFockData(format!("expected {d} families of T matrices, got {}", t.len())));
        }
        for (i, ti) in t.iter().enumerate() {
            if ti.len() != depth + 1 {
                return Err(Error::InvalidFockData(format!(
                    "T_{} needs levels 0..={depth}, got {}",
                    i + 1,
                    ti.len()
                )));
            }
            for (k, m) in ti.iter().enumerate() {
                let n = d.pow(k as u32);
                if m.rows() != n || m.cols() != n {
                    return Err(Error::InvalidFockData(format!(
                        "T_{}^({k}) must be {n}×{n}, got {}×{}",
                        i + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let c_levels = (0..=depth)
            .map(|k| {
                if k == 0 {
                    Vec::new()
                } else {
                    words_of_length(d, k).iter().map(|u| cmap[u].clone()).collect()
                }
            })
            .collect();
        Ok(FockData {
            d,
            depth,
            c: cmap,
            c_levels,
            t,
        })
    }

    /// `C ≡ 1`, `T ≡ 0`: the free semicircular system.
    pub fn free(d: usize, depth: usize) -> Self {
        let c = enumerate_words(d, depth).into_iter().skip(1).map(|u| (u, Rational::one()));
        let t = (0..d)
            .map(|_| (0..=depth).map(|k| RatMatrix::zeros(d.pow(k as u32), d.pow(k as u32))).collect())
            .collect();
        FockData::new(d, depth, c, t).expect("well-formed")
    }

    /// One-variable data from Jacobi parameters: `T^(k) = [a_k]` for `k = 0..=K`,
    /// `C^(k) = b_k` for `k = 1..=K`.
    pub fn from_jacobi(a: &[Rational], b: &[Rational]) -> Result<Self> {
        let depth = b.len();
        if a.len() != depth + 1 {
            return Err(Error::InvalidFockData(format!(
                "Jacobi data needs {} diagonal entries for {} off-diagonal weights, got {}",
                depth + 1,
                depth,
                a.len()
            )));
        }
        let c = b.iter().enumerate().map(|(k, bk)| (Word::from_letters_unchecked(1, vec![1; k + 1]), bk.clone()));
        let t = vec![a.iter().map(|ak| RatMatrix::from_rows(vec![vec![ak.clone()]])).collect()];
        FockData::new(1, depth, c, t)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Largest moment degree the data determine: `2·depth + 1`.
    pub fn moment_bound(&self) -> usize {
        2 * self.depth + 1
    }

    /// `C_u`. Panics for the empty word or words deeper than the data.
    pub fn c_value(&self, u: &Word) -> &Rational {
        &self.c[u]
    }

    pub fn t_matrix(&self, i: usize, k: usize) -> &RatMatrix {
        &self.t[i - 1][k]
    }

    /// Coefficient of `e_w` in `T_i e_u`.
    pub fn t_entry(&self, i: usize, w: &Word, u: &Word) -> &Rational {
        &self.t[i - 1][u.len()][(w.level_index(), u.level_index())]
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level > self.depth {
            Err(Error::DepthExceeded {
                level,
                depth: self.depth,
            })
        } else {
            Ok(())
        }
    }

    fn check_vector(&self, v: &FockVector, max_level: usize) -> Result<()> {
        if v.d() != self.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: v.d() });
        }
        match v.max_level() {
            Some(l) if l > max_level => Err(Error::DepthExceeded {
                level: l,
                depth: max_level,
            }),
            _ => Ok(()),
        }
    }

    /// `K_{C,u} = ∏_{j=1}^{k} C_{u_j}` over the suffixes `u_j = (u(j), ..., u(k))`.
    pub fn kernel_coeff(&self, u: &Word) -> Result<Rational> {
        self.check_level(u.len())?;
        Ok(u.suffixes().fold(Rational::one(), |acc, s| acc * &self.c[&s]))
    }

    /// `⟨ξ, η⟩_C = Σ_u ξ_u η_u K_{C,u}`.
    pub fn c_inner(&self, xi: &FockVector, eta: &FockVector) -> Result<Rational> {
        self.check_vector(xi, self.depth)?;
        self.check_vector(eta, self.depth)?;
        let mut acc = Rational::zero();
        for (u, a) in xi.terms() {
            let b = eta.coeff(u);
            if !b.is_zero() {
                acc += a * b * self.kernel_coeff(u)?;
            }
        }
        Ok(acc)
    }

    /// `a_i⁺`: prepends the letter `i`. The input must live in levels `< depth`.
    pub fn creation(&self, i: usize, v: &FockVector) -> Result<FockVector> {
        self.check_vector(v, self.depth.saturating_sub(1))?;
        if self.depth == 0 && !v.is_zero() {
            return Err(Error::DepthExceeded { level: 1, depth: 0 });
        }
        let mut out = FockVector::zero(self.d);
        for (u, c) in v.terms() {
            out.add_term(u.prepend(i), c.clone());
        }
        Ok(out)
    }

    /// `ã_i⁻ = a_i⁻ C`: `e_u ↦ δ_{i,u(1)} C_u e_{(u(2),...,u(k))}`, and `Ω ↦ 0`.
    pub fn annihilation_tilde(&self, i: usize, v: &FockVector) -> Result<FockVector> {
        self.check_vector(v, self.depth)?;
        let mut out = FockVector::zero(self.d);
        for (u, c) in v.terms() {
            if u.first() == Some(i) {
                out.add_term(u.tail(), c * &self.c[u]);
            }
        }
        Ok(out)
    }

    /// `T_i`, level by level.
    pub fn apply_t(&self, i: usize, v: &FockVector) -> Result<FockVector> {
        self.check_vector(v, self.depth)?;
        let mut out = FockVector::zero(self.d);
        for (u, c) in v.terms() {
            self.add_t_column(i, u, c, &mut out);
        }
        Ok(out)
    }

    // out += c · T_i e_u
    fn add_t_column(&self, i: usize, u: &Word, c: &Rational, out: &mut FockVector) {
        let m = &self.t[i - 1][u.len()];
        let col = u.level_index();
        for row in 0..m.rows() {
            let entry = &m[(row, col)];
            if !entry.is_zero() {
                out.add_term(Word::from_level_index(self.d, u.len(), row), c * entry);
            }
        }
    }

    /// `X_i = a_i⁺ + T_i + ã_i⁻`. The input must live in levels `< depth`.
    pub fn apply_x(&self, i: usize, v: &FockVector) -> Result<FockVector> {
        let mut out = self.creation(i, v)?;
        out.add_scaled(&Rational::one(), &self.apply_t(i, v)?);
        out.add_scaled(&Rational::one(), &self.annihilation_tilde(i, v)?);
        Ok(out)
    }

    // X_i on a vector stored densely by level, keeping only levels <= cap.
    fn step_dense(&self, i: usize, v: &[Vec<Rational>], cap: usize) -> Vec<Vec<Rational>> {
        let d = self.d;
        let top = (v.len() + 1).min(cap + 1);
        let mut out: Vec<Vec<Rational>> = (0..top).map(|l| vec![Rational::zero(); d.pow(l as u32)]).collect();
        for (l, slot) in out.iter_mut().enumerate() {
            if l >= 1 {
                let offset = (i - 1) * d.pow(l as u32 - 1);
                for (idx, x) in v[l - 1].iter().enumerate() {
                    if !x.is_zero() {
                        slot[offset + idx] += x;
                    }
                }
            }
            if l < v.len() {
                let m = &self.t[i - 1][l];
                for (col, x) in v[l].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (row, entry) in slot.iter_mut().enumerate() {
                        let t = &m[(row, col)];
                        if !t.is_zero() {
                            *entry += t * x;
                        }
                    }
                }
            }
            if l + 1 < v.len() {
                let block = d.pow(l as u32);
                let start = (i - 1) * block;
                let c = &self.c_levels[l + 1];
                for (j, x) in v[l + 1][start..start + block].iter().enumerate() {
                    if !x.is_zero() {
                        slot[j] += x * &c[start + j];
                    }
                }
            }
        }
        while out.len() > 1 && out.last().is_some_and(|lv| lv.iter().all(Zero::is_zero)) {
            out.pop();
        }
        out
    }

    /// `φ(x_u) = ⟨Ω, X_{u(1)} ... X_{u(k)} Ω⟩_C`, computed right to left while discarding
    /// components too high to return to `Ω` in the remaining steps.
    pub fn moment(&self, u: &Word) -> Result<Rational> {
        if u.d() != self.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: u.d() });
        }
        if u.len() > self.moment_bound() {
            return Err(Error::DegreeExceedsBound {
                degree: u.len(),
                bound: self.moment_bound(),
            });
        }
        let mut v = vec![vec![Rational::one()]];
        let letters = u.letters();
        for p in (0..letters.len()).rev() {
            // p operators remain after this one
            v = self.step_dense(letters[p], &v, p);
        }
        Ok(v[0][0].clone())
    }

    /// Length-`k` words with `K_{C,u} = 0`; their span is the null space of `⟨·,·⟩_C` on level `k`.
    pub fn kernel_subspace(&self, k: usize) -> Result<Vec<Word>> {
        self.check_level(k)?;
        let mut out = Vec::new();
        for u in words_of_length(self.d, k) {
            if self.kernel_coeff(&u)?.is_zero() {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// `P(X_1, ..., X_d) Ω`; requires `deg P <= depth`.
    pub fn evaluate_on_vacuum(&self, p: &NcPolynomial) -> Result<FockVector> {
        let mut out = FockVector::zero(self.d);
        for (w, c) in p.terms() {
            self.check_level(w.len())?;
            let mut v = FockVector::vacuum(self.d);
            for &l in w.letters().iter().rev() {
                v = self.apply_x(l, &v)?;
            }
            out.add_scaled(c, &v);
        }
        Ok(out)
    }
}

/// First violated assumption on Fock data.
#[derive(Debug, Clone, PartialEq)]
pub enum FockViolation {
    NegativeC { word: Word, value: Rational },
    /// `K_{C,row} T[row][col] ≠ K_{C,col} T[col][row]` on level `k`.
    Transpose { i: usize, k: usize, row: Word, col: Word },
    /// `⟨X_i e_u, e_v⟩_C ≠ ⟨e_u, X_i e_v⟩_C`.
    NotSymmetric { i: usize, u: Word, v: Word },
}

impl fmt::Display for FockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockViolation::NegativeC { word, value } => {
                write!(f, "negative C: C_{word} = {}", format_rational(value))
            }
            FockViolation::Transpose { i, k, row, col } => write!(
                f,
                "T_{i}^({k}) violates the transpose condition at entries ({row}, {col}) and ({col}, {row})"
            ),
            FockViolation::NotSymmetric { i, u, v } => {
                write!(f, "X_{i} is not symmetric on the pair e{u}, e{v}")
            }
        }
    }
}

/// Checks `C >= 0`, `(T_i^(k))ᵗ K_C = K_C T_i^(k)`, and symmetry of every `X_i` on basis
/// pairs up to level `depth - 1`.
pub fn validate_fock_data(data: &FockData) -> std::result::Result<(), FockViolation> {
    let d = data.d;
    for u in enumerate_words(d, data.depth).into_iter().skip(1) {
        let c = data.c_value(&u);
        if is_negative(c) {
            return Err(FockViolation::NegativeC {
                word: u,
                value: c.clone(),
            });
        }
    }
    for k in 0..=data.depth {
        let level = words_of_length(d, k);
        let kernel: Vec<Rational> = level.iter().map(|u| data.kernel_coeff(u).expect("within depth")).collect();
        for i in 1..=d {
            let m = data.t_matrix(i, k);
            for r in 0..level.len() {
                for c in r + 1..level.len() {
                    if &kernel[r] * &m[(r, c)] != &kernel[c] * &m[(c, r)] {
                        return Err(FockViolation::Transpose {
                            i,
                            k,
                            row: level[r].clone(),
                            col: level[c].clone(),
                        });
                    }
                }
            }
        }
    }
    if data.depth > 0 {
        let basis = enumerate_words(d, data.depth - 1);
        for i in 1..=d {
            let images: Vec<FockVector> = basis
                .iter()
                .map(|u| data.apply_x(i, &FockVector::basis(u.clone())).expect("within depth"))
                .collect();
            for (a, u) in basis.iter().enumerate() {
                for (b, v) in basis.iter().enumerate().skip(a) {
                    let left = data.c_inner(&images[a], &FockVector::basis(v.clone())).expect("within depth");
                    let right = data.c_inner(&FockVector::basis(u.clone()), &images[b]).expect("within depth");
                    if left != right {
                        return Err(FockViolation::NotSymmetric {
                            i,
                            u: u.clone(),
                            v: v.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The MOPS of the Fock state, built by
/// `P_{(i,u)} = x_i P_u - Σ_w (T_i)_{w,u} P_w - δ_{i,u(1)} C_u P_{(u(2),...)}`,
/// and checked to satisfy `P_u(X) Ω = e_u`. Squared seminorms are `K_{C,u}`.
pub fn mops_vectors(data: &FockData, n: usize) -> Result<MonicFamily> {
    data.check_level(n)?;
    let d = data.d;
    let mut polys: BTreeMap<Word, NcPolynomial> = BTreeMap::new();
    polys.insert(Word::empty(d), NcPolynomial::one(d));
    for k in 0..n {
        let level = words_of_length(d, k);
        for u in &level {
            for i in 1..=d {
                let mut p = polys[u].left_mul_var(i);
                for w in &level {
                    let t = data.t_entry(i, w, u);
                    p.add_scaled(&-t, &polys[w]);
                }
                if u.first() == Some(i) {
                    p.add_scaled(&-data.c_value(u), &polys[&u.tail()]);
                }
                polys.insert(u.prepend(i), p);
            }
        }
    }
    let mut norms = BTreeMap::new();
    for (u, p) in &polys {
        let image = data.evaluate_on_vacuum(p)?;
        if image != FockVector::basis(u.clone()) {
            return Err(Error::InvalidFockData(format!("P_{u}(X)Ω = {image:?} is not e{u}")));
        }
        norms.insert(u.clone(), data.kernel_coeff(u)?);
    }
    Ok(MonicFamily::from_parts(d, n, polys, norms))
}

/// Builds Fock data reproducing `s` from a MOPS `fam` of `s`:
/// `C_u = ‖P_u‖² / K_{C,(u(2),...)}` and `(T_i^(k))_{u,v} = ⟨P_u, x_i P_v⟩ / K_{C,u}`,
/// with zero wherever the denominator vanishes. Needs moments up to `2K + 1`.
pub fn extract_fock_data<S: State + ?Sized>(s: &S, fam: &MonicFamily, depth: usize) -> Result<FockData> {
    let d = s.d();
    s.check_degree(2 * depth + 1)?;
    if fam.degree() < depth || fam.d() != d {
        return Err(Error::InvalidFockData(format!(
            "family of degree {} cannot supply depth {depth}",
            fam.degree()
        )));
    }
    if let Verdict::Fails(Witness { u, w, value }) = orthogonality_witness(s, fam, depth)? {
        return Err(Error::NotOrthogonal(Box::new(Witness { u, w, value })));
    }

    let mut c: HashMap<Word, Rational> = HashMap::new();
    let mut kernel: HashMap<Word, Rational> = HashMap::new();
    kernel.insert(Word::empty(d), Rational::one());
    for k in 1..=depth {
        for u in words_of_length(d, k) {
            let denom = &kernel[&u.tail()];
            let cu = if denom.is_zero() {
                Rational::zero()
            } else {
                fam.norm_sq(&u) / denom
            };
            kernel.insert(u.clone(), &cu * denom);
            c.insert(u, cu);
        }
    }

    let mut t = Vec::with_capacity(d);
    for i in 1..=d {
        let mut ti = Vec::with_capacity(depth + 1);
        for k in 0..=depth {
            let level = words_of_length(d, k);
            let shifted: Vec<NcPolynomial> = level.iter().map(|v| fam.poly(v).left_mul_var(i)).collect();
            let mut m = RatMatrix::zeros(level.len(), level.len());
            for (r, u) in level.iter().enumerate() {
                let ku = &kernel[u];
                if ku.is_zero() {
                    continue;
                }
                for (col, xpv) in shifted.iter().enumerate() {
                    m[(r, col)] = s.inner(fam.poly(u), xpv)? / ku;
                }
            }
            ti.push(m);
        }
        t.push(ti);
    }
    let data = FockData::new(d, depth, c, t)?;
    validate_fock_data(&data).map_err(|v| Error::InvalidFockData(v.to_string()))?;
    Ok(data)
}

/// A Fock state with every moment up to degree `2·depth + 1` precomputed.
#[derive(Debug, Clone)]
pub struct FockState {
    data: FockData,
    moments: HashMap<Word, Rational>,
}

impl FockState {
    pub fn new(data: FockData) -> Self {
        let d = data.d;
        let bound = data.moment_bound();
        let mut moments = HashMap::new();
        // vectors X_s Ω for every suffix s, truncated at the top level; exact for
        // degrees <= 2·depth + 1 because no such walk climbs past the top level
        let mut frontier = vec![(Word::empty(d), vec![vec![Rational::one()]])];
        moments.insert(Word::empty(d), Rational::one());
        for len in 1..=bound {
            // components above the number of steps left can no longer return to Ω
            let cap = data.depth.min(bound - len);
            let mut next = Vec::with_capacity(frontier.len() * d);
            for (s, v) in &frontier {
                for i in 1..=d {
                    let image = data.step_dense(i, v, cap);
                    let w = s.prepend(i);
                    moments.insert(w.clone(), image[0][0].clone());
                    next.push((w, image));
                }
            }
            frontier = next;
        }
        FockState { data, moments }
    }

    pub fn data(&self) -> &FockData {
        &self.data
    }
}

impl State for FockState {
    fn d(&self) -> usize {
        self.data.d
    }

    fn bound(&self) -> usize {
        self.data.moment_bound()
    }

    fn moment(&self, w: &Word) -> Result<Rational> {
        if w.d() != self.data.d {
            return Err(Error::AlphabetMismatch {
                left: self.data.d,
                right: w.d(),
            });
        }
        self.check_degree(w.len())?;
        Ok(self.moments[w].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mops::{gram_schmidt, has_mops};
    use crate::rational::{int, rat};
    use crate::state::MomentTable;

    fn w(d: usize, l: &[usize]) -> Word {
        Word::new(d, l.to_vec()).unwrap()
    }

    fn jacobi(a: &[i64], b: &[i64]) -> FockData {
        let a: Vec<_> = a.iter().map(|&x| int(x)).collect();
        let b: Vec<_> = b.iter().map(|&x| int(x)).collect();
        FockData::from_jacobi(&a, &b).unwrap()
    }

    #[test]
    fn kernel_coeff_examples() {
        let free = FockData::free(2, 3);
        assert_eq!(free.kernel_coeff(&w(2, &[1, 2, 1])).unwrap(), int(1));
        assert_eq!(free.kernel_coeff(&Word::empty(2)).unwrap(), int(1));
        let data = FockData::from_jacobi(&[int(0), int(0), int(0)], &[rat(2, 3), int(5)]).unwrap();
        // K on e1⊗e1 = C^(2) · (I ⊗ C^(1)) = 5 · 2/3
        assert_eq!(data.kernel_coeff(&w(1, &[1, 1])).unwrap(), rat(10, 3));
        let v = FockVector::basis(w(1, &[1, 1]));
        assert_eq!(data.c_inner(&v, &v).unwrap(), rat(10, 3));
        assert!(data.kernel_coeff(&w(1, &[1, 1, 1])).is_err());
    }

    #[test]
    fn c_inner_examples() {
        let data = FockData::free(2, 2);
        let omega = FockVector::vacuum(2);
        assert_eq!(data.c_inner(&omega, &omega).unwrap(), int(1));
        let e1 = FockVector::basis(w(2, &[1]));
        let e12 = FockVector::basis(w(2, &[1, 2]));
        assert_eq!(data.c_inner(&e1, &e12).unwrap(), int(0));
        assert_eq!(data.c_inner(&omega, &e1).unwrap(), int(0));
    }

    #[test]
    fn operator_examples() {
        let mut c: Vec<(Word, Rational)> = enumerate_words(2, 2).into_iter().skip(1).map(|u| (u, int(1))).collect();
        c[0].1 = int(3); // C_(1) = 3
        let data = FockData::new(
            2,
            2,
            c,
            (0..2).map(|_| (0..=2).map(|k| RatMatrix::zeros(2usize.pow(k), 2usize.pow(k))).collect()).collect(),
        )
        .unwrap();
        let omega = FockVector::vacuum(2);
        let e1 = FockVector::basis(w(2, &[1]));
        assert_eq!(data.creation(1, &omega).unwrap(), e1);
        assert!(data.annihilation_tilde(1, &omega).unwrap().is_zero());
        assert!(data.annihilation_tilde(2, &e1).unwrap().is_zero());
        let mut three_omega = FockVector::zero(2);
        three_omega.add_term(Word::empty(2), int(3));
        assert_eq!(data.annihilation_tilde(1, &e1).unwrap(), three_omega);
        assert!(data.creation(1, &FockVector::basis(w(2, &[1, 1]))).is_err());
    }

    #[test]
    fn x_examples() {
        let data = FockData::free(1, 2);
        let omega = FockVector::vacuum(1);
        assert_eq!(data.apply_x(1, &omega).unwrap(), FockVector::basis(w(1, &[1])));
        let mut expect = FockVector::basis(w(1, &[1, 1]));
        expect.add_term(Word::empty(1), int(1));
        assert_eq!(data.apply_x(1, &FockVector::basis(w(1, &[1]))).unwrap(), expect);

        let shifted = jacobi(&[7, 0], &[1]);
        let mut e = FockVector::basis(w(1, &[1]));
        e.add_term(Word::empty(1), int(7));
        assert_eq!(shifted.apply_x(1, &omega).unwrap(), e);
    }

    #[test]
    fn catalan_moments() {
        let data = FockData::free(1, 4);
        let expect = [1, 0, 1, 0, 2, 0, 5, 0, 14, 0];
        for (m, &e) in expect.iter().enumerate() {
            assert_eq!(data.moment(&w(1, &vec![1; m])).unwrap(), int(e), "degree {m}");
        }
        assert_eq!(data.moment(&Word::empty(1)).unwrap(), int(1));
        assert!(data.moment(&w(1, &[1; 10])).is_err());
    }

    #[test]
    fn mean_is_level_zero_t() {
        let mut t: Vec<Vec<RatMatrix>> =
            (0..2).map(|_| (0..=1).map(|k| RatMatrix::zeros(2usize.pow(k), 2usize.pow(k))).collect()).collect();
        t[1][0][(0, 0)] = rat(-5, 2);
        let data = FockData::new(2, 1, enumerate_words(2, 1).into_iter().skip(1).map(|u| (u, int(1))), t).unwrap();
        assert_eq!(data.moment(&w(2, &[2])).unwrap(), rat(-5, 2));
        assert_eq!(data.moment(&w(2, &[1])).unwrap(), int(0));
    }

    #[test]
    fn fock_state_matches_direct_moments() {
        let data = jacobi(&[1, -2, 3], &[2, 5]);
        let state = FockState::new(data.clone());
        for u in enumerate_words(1, 5) {
            assert_eq!(state.moment(&u).unwrap(), data.moment(&u).unwrap());
        }
        let free = FockState::new(FockData::free(2, 2));
        for u in enumerate_words(2, 5) {
            assert_eq!(free.moment(&u).unwrap(), free.data().moment(&u).unwrap());
        }
    }

    #[test]
    fn validation_examples() {
        let mut t: Vec<Vec<RatMatrix>> =
            (0..2).map(|_| (0..=2).map(|k| RatMatrix::zeros(2usize.pow(k), 2usize.pow(k))).collect()).collect();
        t[0][1] = RatMatrix::from_rows(vec![vec![int(1), int(4)], vec![int(4), int(-2)]]);
        let ones: Vec<(Word, Rational)> = enumerate_words(2, 2).into_iter().skip(1).map(|u| (u, int(1))).collect();
        let data = FockData::new(2, 2, ones.clone(), t.clone()).unwrap();
        assert_eq!(validate_fock_data(&data), Ok(()));

        let mut neg = ones.clone();
        neg[2].1 = int(-1);
        let bad = FockData::new(2, 2, neg, t.clone()).unwrap();
        assert!(matches!(validate_fock_data(&bad), Err(FockViolation::NegativeC { .. })));

        // K_(1) = 1, K_(2) = 2: a symmetric T is no longer K-symmetric
        let mut weighted = ones;
        weighted[1].1 = int(2);
        let bad = FockData::new(2, 2, weighted, t).unwrap();
        assert_eq!(
            validate_fock_data(&bad),
            Err(FockViolation::Transpose {
                i: 1,
                k: 1,
                row: w(2, &[1]),
                col: w(2, &[2])
            })
        );
    }

    #[test]
    fn kernel_subspace_examples() {
        assert!(FockData::free(2, 3).kernel_subspace(2).unwrap().is_empty());
        let degenerate = jacobi(&[0, 0, 0, 0], &[0, 1, 1]);
        for k in 1..=3 {
            assert_eq!(degenerate.kernel_subspace(k).unwrap(), vec![w(1, &vec![1; k])]);
        }
        let mut c: Vec<(Word, Rational)> = enumerate_words(2, 2).into_iter().skip(1).map(|u| (u, int(1))).collect();
        c[0].1 = int(0);
        let data = FockData::new(
            2,
            2,
            c,
            (0..2).map(|_| (0..=2).map(|k| RatMatrix::zeros(2usize.pow(k), 2usize.pow(k))).collect()).collect(),
        )
        .unwrap();
        assert_eq!(data.kernel_subspace(2).unwrap(), vec![w(2, &[1, 1]), w(2, &[2, 1])]);
        assert_eq!(data.kernel_subspace(1).unwrap(), vec![w(2, &[1])]);
    }

    #[test]
    fn mops_vectors_examples() {
        let fam = mops_vectors(&FockData::free(1, 3), 3).unwrap();
        let x = |k: usize| NcPolynomial::monomial(w(1, &vec![1; k]));
        assert_eq!(fam.poly(&w(1, &[1, 1])), &(&x(2) - &x(0)));
        assert_eq!(fam.poly(&w(1, &[1, 1, 1])), &(&x(3) - &x(1).scale(&int(2))));

        let data = jacobi(&[4, 1], &[3]);
        let fam = mops_vectors(&data, 1).unwrap();
        assert_eq!(fam.poly(&w(1, &[1])), &(&x(1) - &x(0).scale(&int(4))));
        let state = FockState::new(data);
        assert_eq!(state.inner(fam.poly(&w(1, &[1])), fam.poly(&Word::empty(1))).unwrap(), int(0));
        assert!(mops_vectors(&FockData::free(1, 2), 3).is_err());
    }

    #[test]
    fn extraction_from_catalan() {
        let state = FockState::new(FockData::free(1, 3));
        let fam = gram_schmidt(&state, 2).unwrap();
        let data = extract_fock_data(&state, &fam, 2).unwrap();
        assert_eq!(data, FockData::free(1, 2));
        assert!(extract_fock_data(&state, &fam, 3).is_err());
    }

    #[test]
    fn extraction_rejects_non_mops() {
        let g = [1, 0, 1, 0, 3];
        let s = MomentTable::from_fn(2, 4, |u| int(g[u.len()])).unwrap();
        assert!(!has_mops(&s, 1).unwrap().holds());
        let fam = gram_schmidt(&s, 1).unwrap();
        assert!(matches!(extract_fock_data(&s, &fam, 1), Err(Error::NotOrthogonal(_))));
    }
}
