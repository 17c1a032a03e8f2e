//! Finitely presented groups and Todd–Coxeter coset enumeration.
//!
//! The dualization groups of double and triple vector bundles are given by
//! presentations: `⟨V, H | V², H², (VH)³⟩` (order 6, the dihedral group of
//! the triangle) and `⟨X, Y, Z | X², Y², Z², (XY)³, (YZ)³, (ZX)³, (XYZ)⁴,
//! (YZX)⁴, (ZXY)⁴⟩` (order 72). This module computes orders, subgroup
//! indices, normality, and quotient identifications by coset enumeration,
//! and carries a matrix certificate showing that `(XYZ)⁴ = 1` is not a
//! consequence of the six order-2 and order-3 relators.
//!
//! # Enumeration strategy
//!
//! The enumerator is the HLT (Haselgrove–Leech–Trotter) variant of
//! Todd–Coxeter: subgroup generator words are scanned-and-filled at the
//! identity coset, then every relator is scanned-and-filled at every live
//! coset in index order, defining new cosets at the leftmost gap.
//! Coincidences are processed immediately through a merge queue that keeps
//! the lower coset index. Cosets are defined in first-need order and
//! relators traced in presentation order, so results are bit-reproducible.
//! All target groups here are tiny; the default cap is 10⁵ cosets.
//!
//! # The independence certificate
//!
//! Dropping the `(XYZ)⁴` relator leaves the affine Coxeter group of type
//! Ã₂, which is infinite, so non-consequence cannot be established by
//! enumeration. Instead the three generators are sent to the affine
//! reflections of Ã₂ written as 3×3 matrices over ℤ/5. All six remaining
//! relators map to the identity, while `XYZ` maps to a nontrivial affine
//! map whose square is a translation of additive order 5: `(XYZ)⁴ ≠ 1` but
//! `(XYZ)²⁰ = 1`, and the image of `XYZ` has order 10. (A product of three
//! reflections is orientation-reversing and therefore never a translation;
//! it is its square that translates.) Any single finite quotient separating
//! `(XYZ)⁴` from the identity certifies non-consequence.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A letter in a relator or subgroup word: `+(k+1)` is generator `k`,
/// `−(k+1)` its inverse.
pub type Letter = i32;

/// A finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self> {
        let p = Presentation {
            generators,
            relators,
        };
        for rel in &p.relators {
            for &l in rel {
                p.check_letter(l)?;
            }
        }
        Ok(p)
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        let idx = l.unsigned_abs() as usize;
        if l == 0 || idx > self.generators.len() {
            return Err(Error::parse(format!("letter {l} out of range")));
        }
        Ok(())
    }

    /// Generator index of a name, if declared.
    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parse a word like `(X Y)^3 Z^-1` over this presentation's
    /// generators. Same syntax as relators in the text format.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        parse_word(&self.generators, text)
    }

    /// Render a word back to text.
    pub fn word_to_string(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&l| {
                let name = &self.generators[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

// ---------------------------------------------------------------------------
// Presentation text format and presets
// ---------------------------------------------------------------------------

/// Parse the presentation text format:
///
/// ```text
/// gens: X Y Z; rels: X^2, Y^2, Z^2, (X Y Z)^4
/// ```
///
/// Relators are products of factors; a factor is a generator name,
/// an inverse `X^-1`, or a parenthesized word, optionally raised to an
/// integer power.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let body = text.trim();
    let rest = body
        .strip_prefix("gens:")
        .ok_or_else(|| Error::parse("expected leading 'gens:'"))?;
    let (gens_part, rels_part) = match rest.split_once(';') {
        Some((g, r)) => (g, r.trim()),
        None => (rest, ""),
    };
    let generators: Vec<String> = gens_part.split_whitespace().map(str::to_string).collect();
    if generators.is_empty() {
        return Err(Error::parse("no generators declared"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for g in &generators {
        if !seen.insert(g.clone()) {
            return Err(Error::parse(format!("duplicate generator '{g}'")));
        }
    }
    let mut relators = Vec::new();
    if !rels_part.is_empty() {
        let rels_body = rels_part
            .strip_prefix("rels:")
            .ok_or_else(|| Error::parse("expected 'rels:' after ';'"))?;
        for chunk in rels_body.split(',') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            relators.push(parse_word(&generators, chunk)?);
        }
    }
    Presentation::new(generators, relators)
}

/// Parse a single word over named generators (see [`parse_presentation`]).
pub fn parse_word(generators: &[String], text: &str) -> Result<Vec<Letter>> {
    let tokens = tokenize(text)?;
    let (word, rest) = parse_seq(generators, &tokens)?;
    if !rest.is_empty() {
        return Err(Error::parse(format!(
            "unexpected trailing input in '{text}'"
        )));
    }
    Ok(word)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Open,
    Close,
    Caret,
    Int(i64),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '(' => {
                chars.next();
                toks.push(Tok::Open);
            }
            ')' => {
                chars.next();
                toks.push(Tok::Close);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                if c == '-' {
                    s.push(c);
                    chars.next();
                }
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::parse(format!("bad integer '{s}'")))?;
                toks.push(Tok::Int(v));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Name(s));
            }
            other => return Err(Error::parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(toks)
}

/// seq := factor+ ; factor := (name | '(' seq ')') ('^' int)?
fn parse_seq<'a>(generators: &[String], mut toks: &'a [Tok]) -> Result<(Vec<Letter>, &'a [Tok])> {
    let mut word = Vec::new();
    loop {
        let base: Vec<Letter> = match toks.first() {
            Some(Tok::Name(name)) => {
                let idx = generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| Error::parse(format!("unknown generator '{name}'")))?;
                toks = &toks[1..];
                vec![(idx + 1) as Letter]
            }
            Some(Tok::Open) => {
                let (inner, rest) = parse_seq(generators, &toks[1..])?;
                match rest.first() {
                    Some(Tok::Close) => {
                        toks = &rest[1..];
                        inner
                    }
                    _ => return Err(Error::parse("unbalanced parenthesis")),
                }
            }
            _ => break,
        };
        let mut power: i64 = 1;
        if toks.first() == Some(&Tok::Caret) {
            match toks.get(1) {
                Some(&Tok::Int(v)) => {
                    power = v;
                    toks = &toks[2..];
                }
                _ => return Err(Error::parse("expected integer after '^'")),
            }
        }
        let repeated = if power >= 0 {
            base
        } else {
            inverse_word(&base)
        };
        for _ in 0..power.unsigned_abs() {
            word.extend_from_slice(&repeated);
        }
    }
    if word.is_empty() {
        return Err(Error::parse("empty word"));
    }
    Ok((word, toks))
}

/// Built-in presentations: `vb2`, `vb3`, `vb3-ppp-only`, `conjecture:<n>`.
pub fn preset(name: &str) -> Result<Presentation> {
    match name {
        "vb2" => parse_presentation("gens: V H; rels: V^2, H^2, (V H)^3"),
        "vb3" => parse_presentation(
            "gens: X Y Z; rels: X^2, Y^2, Z^2, (X Y)^3, (Y Z)^3, (Z X)^3, \
             (X Y Z)^4, (Y Z X)^4, (Z X Y)^4",
        ),
        "vb3-ppp-only" => {
            parse_presentation("gens: X Y Z; rels: X^2, Y^2, Z^2, (X Y)^3, (Y Z)^3, (Z X)^3")
        }
        other => {
            if let Some(nstr) = other.strip_prefix("conjecture:") {
                let n: u8 = nstr
                    .parse()
                    .map_err(|_| Error::parse(format!("bad arity in preset '{other}'")))?;
                if n == 0 || n > 6 {
                    return Err(Error::parse(format!(
                        "conjecture preset arity must be 1..=6, got {n}"
                    )));
                }
                conjecture_presentation(n)
            } else {
                Err(Error::parse(format!("unknown preset '{other}'")))
            }
        }
    }
}

/// The conjectural presentation on `n` generators: for every string of
/// `k` distinct indices, the relator `(X_{i1} … X_{ik})^{k+1}`.
pub fn conjecture_presentation(n: u8) -> Result<Presentation> {
    let generators: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let mut relators = Vec::new();
    let mut stack: Vec<u8> = Vec::new();
    fn rec(n: u8, stack: &mut Vec<u8>, relators: &mut Vec<Vec<Letter>>) {
        if !stack.is_empty() {
            let k = stack.len();
            let mut rel = Vec::with_capacity(k * (k + 1));
            for _ in 0..=k {
                rel.extend(stack.iter().map(|&i| i as Letter));
            }
            relators.push(rel);
        }
        for i in 1..=n {
            if !stack.contains(&i) {
                stack.push(i);
                rec(n, stack, relators);
                stack.pop();
            }
        }
    }
    rec(n, &mut stack, &mut relators);
    Presentation::new(generators, relators)
}

// ---------------------------------------------------------------------------
// Todd–Coxeter
// ---------------------------------------------------------------------------

/// Whether enumeration ran to completion or hit the coset cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableStatus {
    Complete,
    Capped,
}

/// A completed (or capped) coset table. On completion rows are total and
/// every relator fixes every coset.
#[derive(Debug, Clone)]
pub struct CosetTable {
    /// `rows[c][col]` where `col = 2·gen` for a generator, `2·gen + 1` for
    /// its inverse. Total on completion.
    pub rows: Vec<Vec<usize>>,
    pub status: TableStatus,
    /// Largest number of cosets simultaneously defined during the run.
    pub peak_cosets: usize,
    generators: usize,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.rows.len()
    }

    fn column(l: Letter) -> usize {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    /// Image of a coset under one letter.
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset][Self::column(l)]
    }

    /// Trace a whole word from a coset.
    pub fn trace(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Relator consistency: every relator fixes every coset.
    pub fn is_relator_consistent(&self, p: &Presentation) -> bool {
        (0..self.rows.len()).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }
}

/// Working enumeration state: partial table plus a union-find over coset
/// names with a coincidence queue.
struct Enumerator {
    table: Vec<Vec<Option<usize>>>, // indexed by coset, 2g columns
    parent: Vec<usize>,             // union-find, merged cosets point down
    live: usize,
    peak: usize,
    cap: usize,
    cols: usize,
    queue: std::collections::VecDeque<(usize, usize)>,
}

impl Enumerator {
    fn new(generators: usize, cap: usize) -> Self {
        let cols = 2 * generators;
        Enumerator {
            table: vec![vec![None; cols]],
            parent: vec![0],
            live: 1,
            peak: 1,
            cap,
            cols,
            queue: std::collections::VecDeque::new(),
        }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            let up = self.parent[self.parent[c]];
            self.parent[c] = up;
            c = up;
        }
        c
    }

    fn define(&mut self) -> Result<usize> {
        if self.live >= self.cap {
            return Err(Error::EnumerationCapExceeded { cap: self.cap });
        }
        let c = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(c);
        self.live += 1;
        self.peak = self.peak.max(self.live);
        Ok(c)
    }

    fn inv_col(col: usize) -> usize {
        col ^ 1
    }

    /// Record `from · col = to`, queueing a coincidence if a different
    /// image is already present.
    fn deduce(&mut self, from: usize, col: usize, to: usize) {
        let from = self.find(from);
        let to = self.find(to);
        match self.table[from][col] {
            None => {
                self.table[from][col] = Some(to);
                // set the inverse entry too, coincidence if it disagrees
                match self.table[to][Self::inv_col(col)] {
                    None => self.table[to][Self::inv_col(col)] = Some(from),
                    Some(existing) => {
                        if self.find(existing) != from {
                            self.queue.push_back((existing, from));
                        }
                    }
                }
            }
            Some(existing) => {
                if self.find(existing) != to {
                    self.queue.push_back((existing, to));
                }
            }
        }
        self.process_coincidences();
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            self.live -= 1;
            // fold drop's row into keep's
            for col in 0..self.cols {
                if let Some(img) = self.table[drop][col].take() {
                    let img = self.find(img);
                    match self.table[keep][col] {
                        None => {
                            self.table[keep][col] = Some(img);
                            match self.table[img][Self::inv_col(col)] {
                                None => self.table[img][Self::inv_col(col)] = Some(keep),
                                Some(back) => {
                                    if self.find(back) != keep {
                                        self.queue.push_back((back, keep));
                                    }
                                }
                            }
                        }
                        Some(existing) => {
                            if self.find(existing) != img {
                                self.queue.push_back((existing, img));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Scan a word from a coset back to itself, filling gaps (HLT). New
    /// cosets are defined at the leftmost gap until the scan closes.
    fn scan_and_fill(&mut self, coset: usize, word: &[Letter]) -> Result<()> {
        loop {
            let start = self.find(coset);
            // forward scan
            let mut f = start;
            let mut fi = 0;
            while fi < word.len() {
                let col = CosetTable::column(word[fi]);
                let cur = self.find(f);
                match self.table[cur][col] {
                    Some(next) => {
                        f = self.find(next);
                        fi += 1;
                    }
                    None => {
                        f = cur;
                        break;
                    }
                }
            }
            if fi == word.len() {
                if f != start {
                    self.queue.push_back((f, start));
                    self.process_coincidences();
                }
                return Ok(());
            }
            // backward scan
            let mut b = start;
            let mut bi = word.len();
            while bi > fi {
                let col = Self::inv_col(CosetTable::column(word[bi - 1]));
                let cur = self.find(b);
                match self.table[cur][col] {
                    Some(prev) => {
                        b = self.find(prev);
                        bi -= 1;
                    }
                    None => {
                        b = cur;
                        break;
                    }
                }
            }
            if bi == fi {
                // both scans computed the coset at position fi
                if f != b {
                    self.queue.push_back((f, b));
                    self.process_coincidences();
                }
                return Ok(());
            }
            if bi == fi + 1 {
                // the gap is closed by a single deduction
                self.deduce(f, CosetTable::column(word[fi]), b);
                return Ok(());
            }
            // fill the leftmost gap with a fresh coset and rescan
            let fresh = self.define()?;
            self.deduce(f, CosetTable::column(word[fi]), fresh);
        }
    }

    /// Compact live cosets into a dense total table.
    fn finish(mut self) -> CosetTable {
        let mut remap = vec![usize::MAX; self.table.len()];
        let mut order = Vec::new();
        let live = self.table.len();
        for (c, slot) in remap.iter_mut().enumerate().take(live) {
            if self.parent[c] == c {
                *slot = order.len();
                order.push(c);
            }
        }
        let generators = self.cols / 2;
        let mut rows = Vec::with_capacity(order.len());
        for &c in &order {
            let mut row = Vec::with_capacity(self.cols);
            for col in 0..self.cols {
                let img = self.table[c][col].expect("table total on completion");
                let img = self.find(img);
                row.push(remap[img]);
            }
            rows.push(row);
        }
        CosetTable {
            rows,
            status: TableStatus::Complete,
            peak_cosets: self.peak,
            generators,
        }
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup` (words over
/// the presentation's generators) in the presented group. Deterministic;
/// fails with [`Error::EnumerationCapExceeded`] if more than `cap` cosets
/// would be live at once.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Vec<Letter>],
    cap: usize,
) -> Result<CosetTable> {
    if cap == 0 {
        return Err(Error::EnumerationCapExceeded { cap });
    }
    for w in subgroup {
        for &l in w {
            p.check_letter(l)?;
        }
    }
    let mut e = Enumerator::new(p.generators.len(), cap);
    for w in subgroup {
        e.scan_and_fill(0, w)?;
    }
    // HLT main loop: scan every relator at every live coset, then fill any
    // remaining gaps so the action is total, until stable.
    loop {
        let mut changed = false;
        let mut c = 0;
        while c < e.table.len() {
            if e.find(c) == c {
                for r in 0..p.relators.len() {
                    let rel = p.relators[r].clone();
                    if e.find(c) != c {
                        break;
                    }
                    e.scan_and_fill(c, &rel)?;
                }
            }
            c += 1;
        }
        // totality pass
        let mut c = 0;
        while c < e.table.len() {
            if e.find(c) == c {
                for col in 0..e.cols {
                    if e.find(c) == c && e.table[c][col].is_none() {
                        let fresh = e.define()?;
                        e.deduce(c, col, fresh);
                        changed = true;
                    }
                }
            }
            c += 1;
        }
        if !changed {
            break;
        }
    }
    let table = e.finish();
    debug_assert!(table.is_relator_consistent(p));
    Ok(table)
}

/// The order of the presented group (coset count over the trivial
/// subgroup).
pub fn group_order(p: &Presentation, cap: usize) -> Result<usize> {
    Ok(coset_enumerate(p, &[], cap)?.coset_count())
}

/// Index of the subgroup generated by `gens` in the presented group.
pub fn subgroup_index(p: &Presentation, gens: &[Vec<Letter>], cap: usize) -> Result<usize> {
    Ok(coset_enumerate(p, gens, cap)?.coset_count())
}

/// Is the subgroup generated by `gens` normal? True iff for every
/// presentation generator `g` and subgroup generator `s` the word
/// `g s g⁻¹` fixes the identity coset of the subgroup's coset table.
pub fn is_normal(p: &Presentation, gens: &[Vec<Letter>], cap: usize) -> Result<bool> {
    let table = coset_enumerate(p, gens, cap)?;
    for g in 1..=p.generators.len() as Letter {
        for s in gens {
            let mut word = vec![g];
            word.extend_from_slice(s);
            word.push(-g);
            if table.trace(0, &word) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Order of the quotient of the presented group by the normal closure of
/// `extra_relators`, plus a nonabelian flag (true iff some pair of
/// generator actions fails to commute on some coset).
pub fn quotient_order(
    p: &Presentation,
    extra_relators: &[Vec<Letter>],
    cap: usize,
) -> Result<(usize, bool)> {
    let mut q = p.clone();
    for r in extra_relators {
        for &l in r {
            p.check_letter(l)?;
        }
        q.relators.push(r.clone());
    }
    let table = coset_enumerate(&q, &[], cap)?;
    let g = p.generators.len() as Letter;
    let mut nonabelian = false;
    'outer: for a in 1..=g {
        for b in (a + 1)..=g {
            for c in 0..table.coset_count() {
                if table.trace(c, &[a, b]) != table.trace(c, &[b, a]) {
                    nonabelian = true;
                    break 'outer;
                }
            }
        }
    }
    Ok((table.coset_count(), nonabelian))
}

// ---------------------------------------------------------------------------
// Independence certificate
// ---------------------------------------------------------------------------

/// 3×3 matrix over ℤ/5.
type Mat = [[u64; 3]; 3];

const MOD: u64 = 5;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0u64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u64>() % MOD;
        }
    }
    out
}

fn mat_id() -> Mat {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
}

fn mat_pow(a: &Mat, k: usize) -> Mat {
    let mut out = mat_id();
    for _ in 0..k {
        out = mat_mul(&out, a);
    }
    out
}

fn mat_order(a: &Mat, bound: usize) -> Option<usize> {
    let mut p = *a;
    for k in 1..=bound {
        if p == mat_id() {
            return Some(k);
        }
        p = mat_mul(&p, a);
    }
    None
}

/// The affine reflection matrices of Ã₂ reduced mod 5, in the basis
/// (simple-root coordinates, affine coordinate).
fn affine_rep() -> [Mat; 3] {
    // s0 (affine reflection), s1, s2; −1 ≡ 4 (mod 5)
    let s0: Mat = [[0, 4, 1], [4, 0, 1], [0, 0, 1]];
    let s1: Mat = [[4, 1, 0], [0, 1, 0], [0, 0, 1]];
    let s2: Mat = [[1, 0, 0], [1, 4, 0], [0, 0, 1]];
    [s0, s1, s2]
}

/// The verified facts of the independence certificate.
#[derive(Debug, Clone, Serialize)]
pub struct IndependenceReport {
    pub modulus: u64,
    /// All six relators of the order-2/order-3 presentation map to the
    /// identity matrix.
    pub relators_identity: bool,
    /// (XYZ)⁴ maps to the identity — must be `false` for the certificate.
    pub xyz4_identity: bool,
    /// (XYZ)²⁰ maps to the identity (the square of XYZ is a translation of
    /// additive order 5).
    pub xyz20_identity: bool,
    /// Multiplicative order of the image of XYZ (= 10).
    pub xyz_order: usize,
    pub pass: bool,
}

/// Certify that `(XYZ)⁴ = 1` is not a consequence of the six relators
/// `X², Y², Z², (XY)³, (YZ)³, (ZX)³`: exhibit matrices over ℤ/5 satisfying
/// all six but not `(XYZ)⁴`.
pub fn independence_certificate() -> Result<IndependenceReport> {
    let [x, y, z] = affine_rep();
    let gens = [x, y, z];
    let mut relators_identity = true;
    for g in &gens {
        relators_identity &= mat_pow(g, 2) == mat_id();
    }
    for (a, b) in [(x, y), (y, z), (z, x)] {
        relators_identity &= mat_pow(&mat_mul(&a, &b), 3) == mat_id();
    }
    let xyz = mat_mul(&mat_mul(&x, &y), &z);
    let xyz4_identity = mat_pow(&xyz, 4) == mat_id();
    let xyz20_identity = mat_pow(&xyz, 20) == mat_id();
    let xyz_order = mat_order(&xyz, 100).unwrap_or(0);
    let pass = relators_identity && !xyz4_identity && xyz20_identity && xyz_order == 10;
    let report = IndependenceReport {
        modulus: MOD,
        relators_identity,
        xyz4_identity,
        xyz20_identity,
        xyz_order,
        pass,
    };
    if !pass {
        return Err(Error::CertificateInvalid(format!(
            "independence certificate failed: {report:?}"
        )));
    }
    Ok(report)
}
