//! Dualization operations on decomposed bundles and the groups they
//! generate.
//!
//! # The slot rule
//!
//! Dualizing an n-fold bundle along axis `i` fixes every slot not containing
//! `i` and sends a slot `S ∋ i` to the dual of the content previously at
//! `T = S Δ (U ∖ {i})`, where `U = {1..n}` and `Δ` is symmetric difference.
//! For n = 2 this reproduces the classical picture (the dual over the side
//! `A` has sides `A`, `C*` and core `B*`); for n = 3 it sends the ultracore
//! to the dual of the side bundle of axis `i`.
//!
//! # The sign rule
//!
//! Slot contents carry a ±1 sign σ, and each axis `i` carries an evaluation
//! sign ε_i(S) for every slot `S ∋ i` (the sign with which the canonical
//! pairing between the bundle and its axis-i dual evaluates on that slot).
//! Dualization along axis `i` transforms these by (writing `T = S Δ (U∖{i})`
//! as above):
//!
//! ```text
//! σ'(S)    = σ(T) · ε_i(T)          for S ∋ i        (σ unchanged otherwise)
//! ε'_i(S)  = ε_i(T)                 for S ∋ i
//! ε'_j(S)  = −ε_j(S) · σ(S)         for j ≠ i, S ∌ i
//! ε'_j(S)  = ε_i(T)                 for j ≠ i, S ∋ i
//! ```
//!
//! The rule is an involution (double dual = identity, signs included). It is
//! calibrated so that, starting from an all-plus trivial bundle:
//!
//! - at n = 2, the composite V H V equals the flip with sign −1 exactly on
//!   the core slot, and the closure of {V, H} has order 6;
//! - at n = 3, the closure of {X, Y, Z} has order 72, every product of two
//!   distinct generators has order 3, and (XYZ)⁴ = 1.
//!
//! The `σ(S)` factor in the third line is the normalization that identifies
//! the triple dual of a bundle with its flip up to −1 on the core (without
//! it the identity `ε'_j(S) = −ε_j(S)` still reproduces everything at n = 2
//! but yields a group of order 96 at n = 3). The n = 2 instance of the rule
//! is cross-checked against an independent numeric oracle in
//! [`crate::paircalc::oracle_signed_relabeling`].
//!
//! # Group elements
//!
//! A [`SignedRelabeling`] records the full effect of a word in the
//! dualization generators on the all-plus trivial bundle: the slot
//! bijection, the dual-parity increments, the slot signs σ, **and** the
//! evaluation sign block ε. The ε block is genuinely part of the element:
//! at n = 3 the 72 closure elements project onto only 68 distinct
//! (bijection, parity, σ) triples, the fibers of the projection being cosets
//! of the order-3 kernel of the quotient onto S₄. Because the generator
//! action is state-dependent (it reads ε), elements also retain a defining
//! word; composition concatenates words (with involutive cancellation) and
//! replays them, which is well defined because the action on the orbit of
//! the all-plus state is simply transitive.

use std::collections::BTreeMap;
use std::fmt;

use crate::lattice::{
    all_slots, axis_bit, full_mask, mask_to_subset, Atom, AxisIndex, DecomposedBundle, Decoration,
    Sign, SlotMask,
};
use crate::report::RelationReport;
use crate::{Error, Result};

/// A word in the dualization generators `X_1 … X_n`. Generators are
/// involutions, so no formal inverses are stored. Letters act right to
/// left: the last letter of the word is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<AxisIndex>,
}

impl Word {
    pub fn new(letters: Vec<AxisIndex>) -> Self {
        Word { letters }
    }

    /// The word repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        Word::new(self.letters.repeat(k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|&l| format!("X{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

// ---------------------------------------------------------------------------
// The state machine implementing the slot and sign rules
// ---------------------------------------------------------------------------

/// Full sign state reached from the all-plus base: per position (slot mask)
/// the original slot living there, its accumulated dual parity and sign σ,
/// plus the evaluation sign table ε.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct State {
    n: u8,
    /// Indexed by position mask − 1: (original slot, parity, σ).
    slots: Vec<(SlotMask, u8, Sign)>,
    /// ε_j(S) for every axis j and position S ∋ j, in (j, S) order.
    eps: Vec<Sign>,
}

impl State {
    fn eps_keys(n: u8) -> Vec<(AxisIndex, SlotMask)> {
        let mut keys = Vec::new();
        for j in 1..=n {
            for m in all_slots(n) {
                if m & axis_bit(j) != 0 {
                    keys.push((j, m));
                }
            }
        }
        keys
    }

    fn base(n: u8) -> State {
        State {
            n,
            slots: all_slots(n).map(|m| (m, 0, Sign::PLUS)).collect(),
            eps: vec![Sign::PLUS; Self::eps_keys(n).len()],
        }
    }

    fn eps_index(&self, j: AxisIndex, m: SlotMask) -> usize {
        // Slots containing j among 1..m, accumulated over axes before j.
        let per_axis = (full_mask(self.n) as usize).div_ceil(2);
        let before: usize = (j as usize - 1) * per_axis;
        let within = (1..m).filter(|s| s & axis_bit(j) != 0).count();
        before + within
    }

    fn eps(&self, j: AxisIndex, m: SlotMask) -> Sign {
        self.eps[self.eps_index(j, m)]
    }

    fn sigma(&self, m: SlotMask) -> Sign {
        self.slots[(m - 1) as usize].2
    }

    /// Apply the dualization rule along axis `i`.
    fn apply(&self, i: AxisIndex) -> State {
        let n = self.n;
        let u = full_mask(n);
        let partner = |m: SlotMask| m ^ (u ^ axis_bit(i));
        let mut slots = self.slots.clone();
        for m in all_slots(n) {
            if m & axis_bit(i) != 0 {
                let t = partner(m);
                let (orig, parity, sigma) = self.slots[(t - 1) as usize];
                slots[(m - 1) as usize] = (orig, parity ^ 1, sigma * self.eps(i, t));
            }
        }
        let mut eps = self.eps.clone();
        for (j, m) in Self::eps_keys(n) {
            let idx = self.eps_index(j, m);
            eps[idx] = if j == i {
                self.eps(i, partner(m))
            } else if m & axis_bit(i) == 0 {
                -(self.eps(j, m) * self.sigma(m))
            } else {
                self.eps(i, partner(m))
            };
        }
        State { n, slots, eps }
    }

    fn apply_word(&self, letters: &[AxisIndex]) -> State {
        let mut s = self.clone();
        for &l in letters.iter().rev() {
            s = s.apply(l);
        }
        s
    }

    fn is_base(&self) -> bool {
        *self == State::base(self.n)
    }
}

/// Free reduction of a word over involutive generators: cancel adjacent
/// equal letters. No other rewriting is performed.
fn reduce(letters: impl IntoIterator<Item = AxisIndex>) -> Vec<AxisIndex> {
    let mut out: Vec<AxisIndex> = Vec::new();
    for l in letters {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// dual_axis on bundles
// ---------------------------------------------------------------------------

/// Dualize a decomposed bundle along one axis, carrying atoms, parities,
/// signs and evaluation signs per the module-level rules.
pub fn dual_axis(b: &DecomposedBundle, i: AxisIndex) -> Result<DecomposedBundle> {
    let n = b.n();
    if i == 0 || i > n {
        return Err(Error::BadAxis { axis: i, n });
    }
    let u = full_mask(n);
    let partner = |m: SlotMask| m ^ (u ^ axis_bit(i));
    let mut slots = BTreeMap::new();
    for m in all_slots(n) {
        let d = if m & axis_bit(i) != 0 {
            let t = partner(m);
            let src = b.slot(t);
            Decoration {
                atom: src.atom.clone(),
                dual_parity: src.dual_parity ^ 1,
                sign: src.sign * b.axis_sign(i, t),
            }
        } else {
            b.slot(m).clone()
        };
        slots.insert(m, d);
    }
    let mut eps = BTreeMap::new();
    for j in 1..=n {
        for m in all_slots(n) {
            if m & axis_bit(j) == 0 {
                continue;
            }
            let s = if j == i {
                b.axis_sign(i, partner(m))
            } else if m & axis_bit(i) == 0 {
                -(b.axis_sign(j, m) * b.slot(m).sign)
            } else {
                b.axis_sign(i, partner(m))
            };
            eps.insert((j, m), s);
        }
    }
    Ok(DecomposedBundle::assemble(n, slots, Some(eps)))
}

// ---------------------------------------------------------------------------
// SignedRelabeling
// ---------------------------------------------------------------------------

/// A group element of the dualization group: the full effect of a word on
/// the all-plus trivial bundle. See the module docs for why the evaluation
/// sign block belongs to the element identity.
#[derive(Debug, Clone)]
pub struct SignedRelabeling {
    n: u8,
    /// Original slot ↦ the position now holding (the dual of) its content.
    slot_map: BTreeMap<SlotMask, SlotMask>,
    /// Original slot ↦ accumulated dual parity of its content.
    dual_inc: BTreeMap<SlotMask, u8>,
    /// Original slot ↦ the sign σ its content has acquired.
    signs: BTreeMap<SlotMask, Sign>,
    /// Evaluation signs ε_j(S) of the resulting bundle, indexed by position.
    axis_signs: BTreeMap<(AxisIndex, SlotMask), Sign>,
    /// A defining word (reduced); not part of the element's identity.
    word: Vec<AxisIndex>,
}

impl PartialEq for SignedRelabeling {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.slot_map == other.slot_map
            && self.dual_inc == other.dual_inc
            && self.signs == other.signs
            && self.axis_signs == other.axis_signs
    }
}
impl Eq for SignedRelabeling {}

impl PartialOrd for SignedRelabeling {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SignedRelabeling {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            &self.n,
            &self.slot_map,
            &self.dual_inc,
            &self.signs,
            &self.axis_signs,
        )
            .cmp(&(
                &other.n,
                &other.slot_map,
                &other.dual_inc,
                &other.signs,
                &other.axis_signs,
            ))
    }
}
impl std::hash::Hash for SignedRelabeling {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (
            &self.n,
            &self.slot_map,
            &self.dual_inc,
            &self.signs,
            &self.axis_signs,
        )
            .hash(state)
    }
}

impl SignedRelabeling {
    fn from_state(state: &State, word: Vec<AxisIndex>) -> Self {
        let n = state.n;
        let mut slot_map = BTreeMap::new();
        let mut dual_inc = BTreeMap::new();
        let mut signs = BTreeMap::new();
        for m in all_slots(n) {
            let (orig, parity, sigma) = state.slots[(m - 1) as usize];
            slot_map.insert(orig, m);
            dual_inc.insert(orig, parity);
            signs.insert(orig, sigma);
        }
        let mut axis_signs = BTreeMap::new();
        for (j, m) in State::eps_keys(n) {
            axis_signs.insert((j, m), state.eps(j, m));
        }
        SignedRelabeling {
            n,
            slot_map,
            dual_inc,
            signs,
            axis_signs,
            word,
        }
    }

    /// Assemble an element from explicitly computed parts (used by the
    /// numeric oracle in [`crate::paircalc`], which derives every sign by
    /// concrete linear algebra rather than the symbolic rule).
    pub(crate) fn from_parts(
        n: u8,
        slot_map: BTreeMap<SlotMask, SlotMask>,
        dual_inc: BTreeMap<SlotMask, u8>,
        signs: BTreeMap<SlotMask, Sign>,
        axis_signs: BTreeMap<(AxisIndex, SlotMask), Sign>,
        word: Vec<AxisIndex>,
    ) -> Self {
        SignedRelabeling {
            n,
            slot_map,
            dual_inc,
            signs,
            axis_signs,
            word,
        }
    }

    /// The identity element.
    pub fn identity(n: u8) -> Self {
        Self::from_state(&State::base(n), Vec::new())
    }

    /// The element realized by a word (letters validated against `n`).
    pub fn from_word(n: u8, letters: &[AxisIndex]) -> Result<Self> {
        for &l in letters {
            if l == 0 || l > n {
                return Err(Error::BadAxis { axis: l, n });
            }
        }
        let word = reduce(letters.iter().copied());
        let state = State::base(n).apply_word(&word);
        Ok(Self::from_state(&state, word))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Where the content of an original slot now sits.
    pub fn slot_image(&self, mask: SlotMask) -> SlotMask {
        self.slot_map[&mask]
    }

    /// Accumulated dual parity of an original slot's content.
    pub fn dual_inc(&self, mask: SlotMask) -> u8 {
        self.dual_inc[&mask]
    }

    /// The sign acquired by an original slot's content.
    pub fn sign(&self, mask: SlotMask) -> Sign {
        self.signs[&mask]
    }

    /// Evaluation sign of the resulting state (indexed by position).
    pub fn axis_sign(&self, j: AxisIndex, mask: SlotMask) -> Sign {
        self.axis_signs[&(j, mask)]
    }

    /// A reduced defining word.
    pub fn word(&self) -> &[AxisIndex] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Group inverse: the reversed word (every generator is an involution).
    pub fn inverse(&self) -> Self {
        let rev: Vec<AxisIndex> = self.word.iter().rev().copied().collect();
        Self::from_word(self.n, &rev).expect("letters of a valid element are valid")
    }

    /// The order of the element (smallest k ≥ 1 with gᵏ = 1), by iterated
    /// state replay. All groups reachable here are finite and small.
    pub fn order(&self) -> usize {
        let base = State::base(self.n);
        let mut s = base.apply_word(&self.word);
        let mut k = 1;
        while !s.is_base() {
            s = s.apply_word(&self.word);
            k += 1;
            assert!(k <= 10_000, "element order exceeds sanity bound");
        }
        k
    }
}

impl fmt::Display for SignedRelabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for m in all_slots(self.n) {
            let stars = if self.dual_inc[&m] == 1 { "*" } else { "" };
            let sg = if self.signs[&m].is_plus() { "" } else { "-" };
            parts.push(format!(
                "{:?}→{}{}{:?}",
                mask_to_subset(m),
                sg,
                stars,
                mask_to_subset(self.slot_map[&m])
            ));
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// The SignedRelabeling realizing `dual_axis` along `i` on bundles of the
/// given shape (the shape supplies the arity; the element is taken relative
/// to the all-plus trivial state, which is how group elements are always
/// normalized here).
pub fn generator_action(
    n: u8,
    shape_context: &DecomposedBundle,
    i: AxisIndex,
) -> Result<SignedRelabeling> {
    if shape_context.n() != n {
        return Err(Error::ArityMismatch {
            left: n,
            right: shape_context.n(),
        });
    }
    SignedRelabeling::from_word(n, &[i])
}

/// Compose two elements: `compose(g, h)` applies `h` first. The defining
/// words are concatenated with involutive cancellation and replayed on the
/// all-plus base state.
pub fn compose(g: &SignedRelabeling, h: &SignedRelabeling) -> Result<SignedRelabeling> {
    if g.n != h.n {
        return Err(Error::ArityMismatch {
            left: g.n,
            right: h.n,
        });
    }
    let mut letters = g.word.clone();
    letters.extend_from_slice(&h.word);
    SignedRelabeling::from_word(g.n, &letters)
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

/// The concrete dualization group: all elements reachable from the identity
/// by the generators, with its Cayley graph. Elements are listed in
/// breadth-first order (identity first, generators in ascending axis
/// order), which is the deterministic canonical ordering.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    pub n: u8,
    pub elements: Vec<SignedRelabeling>,
    /// `cayley[e][i-1]` = index of X_i ∘ elements[e].
    pub cayley: Vec<Vec<usize>>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of an element, if present.
    pub fn find(&self, g: &SignedRelabeling) -> Option<usize> {
        self.elements.iter().position(|e| e == g)
    }

    /// Cayley graph in DOT format with generator-colored edges.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 6] = ["red", "blue", "green", "orange", "purple", "brown"];
        let mut out = String::from("digraph cayley {\n");
        for (idx, el) in self.elements.iter().enumerate() {
            let label = if el.word().is_empty() {
                "1".to_string()
            } else {
                el.word()
                    .iter()
                    .map(|l| format!("X{l}"))
                    .collect::<Vec<_>>()
                    .join("")
            };
            out.push_str(&format!("  e{idx} [label=\"{label}\"];\n"));
        }
        for (idx, row) in self.cayley.iter().enumerate() {
            for (gi, &to) in row.iter().enumerate() {
                out.push_str(&format!(
                    "  e{idx} -> e{to} [color={} label=\"X{}\"];\n",
                    COLORS[gi % COLORS.len()],
                    gi + 1
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of the generators under composition. Fails with
/// [`Error::ClosureCapExceeded`] (carrying the partial count) if more than
/// `max_elements` elements are found.
pub fn closure(n: u8, max_elements: usize) -> Result<GroupClosure> {
    let base = State::base(n);
    let mut states: Vec<(State, Vec<AxisIndex>)> = vec![(base.clone(), Vec::new())];
    let mut index: BTreeMap<State, usize> = BTreeMap::new();
    index.insert(base, 0);
    let mut cayley: Vec<Vec<usize>> = Vec::new();
    let mut cursor = 0;
    while cursor < states.len() {
        let (state, word) = states[cursor].clone();
        let mut row = Vec::with_capacity(n as usize);
        for i in 1..=n {
            let next = state.apply(i);
            let to = match index.get(&next) {
                Some(&idx) => idx,
                None => {
                    if states.len() >= max_elements {
                        return Err(Error::ClosureCapExceeded {
                            cap: max_elements,
                            found: states.len(),
                        });
                    }
                    let mut w = vec![i];
                    w.extend_from_slice(&word);
                    let idx = states.len();
                    index.insert(next.clone(), idx);
                    states.push((next, reduce(w)));
                    idx
                }
            };
            row.push(to);
        }
        cayley.push(row);
        cursor += 1;
    }
    let elements = states
        .into_iter()
        .map(|(s, w)| SignedRelabeling::from_state(&s, w))
        .collect();
    Ok(GroupClosure {
        n,
        elements,
        cayley,
    })
}

/// Closure of a list of elements under composition (subgroup generation).
pub fn subgroup_closure(
    gens: &[SignedRelabeling],
    max_elements: usize,
) -> Result<Vec<SignedRelabeling>> {
    assert!(
        !gens.is_empty(),
        "subgroup closure needs at least one generator"
    );
    let n = gens[0].n;
    let mut elements = vec![SignedRelabeling::identity(n)];
    let mut seen: std::collections::BTreeSet<SignedRelabeling> = elements.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        for g in gens {
            let next = compose(g, &current)?;
            if seen.insert(next.clone()) {
                if elements.len() >= max_elements {
                    return Err(Error::ClosureCapExceeded {
                        cap: max_elements,
                        found: elements.len(),
                    });
                }
                elements.push(next);
            }
        }
        cursor += 1;
    }
    Ok(elements)
}

/// Is the subgroup generated by `gens` normal in the full closure? Checked
/// by conjugating every subgroup element by every group generator.
pub fn is_subgroup_normal(n: u8, gens: &[SignedRelabeling], cap: usize) -> Result<bool> {
    let sub = subgroup_closure(gens, cap)?;
    let sub_set: std::collections::BTreeSet<_> = sub.iter().cloned().collect();
    for i in 1..=n {
        let g = SignedRelabeling::from_word(n, &[i])?;
        for s in &sub {
            let conj = compose(&compose(&g, s)?, &g.inverse())?;
            if !sub_set.contains(&conj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Relation verification
// ---------------------------------------------------------------------------

/// True iff the word acts as the identity on the all-plus state — slot map,
/// parities, σ and ε all trivial.
pub fn verify_relation(n: u8, w: &Word) -> Result<bool> {
    Ok(SignedRelabeling::from_word(n, &w.letters)?.is_identity())
}

/// Check the relation family `(X_{i1} … X_{ik})^{k+1} = 1` for every string
/// of `k ≤ max_k` distinct indices, by action. Returns one report per
/// string. No completeness claim is made.
pub fn verify_conjecture(n: u8, max_k: u8) -> Result<Vec<RelationReport>> {
    if max_k == 0 || max_k > n {
        return Err(Error::BadAxis { axis: max_k, n });
    }
    let mut reports = Vec::new();
    for k in 1..=max_k {
        for tuple in distinct_tuples(n, k) {
            let base = Word::new(tuple.clone());
            let relation = format!(
                "({})^{}",
                tuple
                    .iter()
                    .map(|l| format!("X{l}"))
                    .collect::<Vec<_>>()
                    .join(" "),
                k + 1
            );
            let g = SignedRelabeling::from_word(n, &base.letters)?;
            let order = g.order();
            let holds = verify_relation(n, &base.pow(k as usize + 1))?;
            reports.push(RelationReport {
                relation,
                n: n as usize,
                holds,
                order: Some(order),
            });
        }
    }
    Ok(reports)
}

/// All ordered k-tuples of distinct axes in lexicographic order.
fn distinct_tuples(n: u8, k: u8) -> Vec<Vec<AxisIndex>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: u8, k: u8, current: &mut Vec<AxisIndex>, out: &mut Vec<Vec<AxisIndex>>) {
        if current.len() == k as usize {
            out.push(current.clone());
            return;
        }
        for i in 1..=n {
            if !current.contains(&i) {
                current.push(i);
                rec(n, k, current, out);
                current.pop();
            }
        }
    }
    rec(n, k, &mut current, &mut out);
    out
}

/// The named special elements of the n = 3 group: `P_X = YZY = ZYZ` (and
/// cyclic variants) and `Q_X = XYZX`, `Q_Y = YZXY`, `Q_Z = ZXYZ`. The
/// alternative expressions for the P's are verified internally.
pub fn special_elements(n: u8) -> Result<BTreeMap<String, SignedRelabeling>> {
    if n != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            found: n,
        });
    }
    const X: AxisIndex = 1;
    const Y: AxisIndex = 2;
    const Z: AxisIndex = 3;
    let mut map = BTreeMap::new();
    let defs: [(&str, Vec<AxisIndex>, Vec<AxisIndex>); 3] = [
        ("P_X", vec![Y, Z, Y], vec![Z, Y, Z]),
        ("P_Y", vec![Z, X, Z], vec![X, Z, X]),
        ("P_Z", vec![X, Y, X], vec![Y, X, Y]),
    ];
    for (name, w1, w2) in defs {
        let a = SignedRelabeling::from_word(3, &w1)?;
        let b = SignedRelabeling::from_word(3, &w2)?;
        if a != b {
            return Err(Error::CertificateInvalid(format!(
                "{name}: the two defining words disagree"
            )));
        }
        map.insert(name.to_string(), a);
    }
    let qs: [(&str, Vec<AxisIndex>); 3] = [
        ("Q_X", vec![X, Y, Z, X]),
        ("Q_Y", vec![Y, Z, X, Y]),
        ("Q_Z", vec![Z, X, Y, Z]),
    ];
    for (name, w) in qs {
        map.insert(name.to_string(), SignedRelabeling::from_word(3, &w)?);
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Cotangent completion
// ---------------------------------------------------------------------------

/// Extend an n-fold bundle to the (n+1)-fold bundle whose lower n-faces are
/// the bundle and its n duals.
///
/// Slot rule, with complements taken in `{1..n}`: slots avoiding the new
/// axis are copied; a slot `S ∋ n+1` receives the dual of the content at
/// `({1..n}) ∖ (S ∖ {n+1})`, with the convention that the complement of the
/// full set is a fresh cotangent-of-base atom `T*M` of dimension
/// `base_dim`. Evaluation signs of the completion are all +1.
pub fn cotangent_completion(b: &DecomposedBundle, base_dim: usize) -> DecomposedBundle {
    let n = b.n();
    let m = n + 1;
    let old_full = full_mask(n);
    let mut fresh_name = String::from("T*M");
    while b.slots().any(|(_, d)| d.atom.name == fresh_name) {
        fresh_name.push('\'');
    }
    let mut slots = BTreeMap::new();
    for s in all_slots(m) {
        let d = if s & axis_bit(m) == 0 {
            b.slot(s).clone()
        } else {
            let k = s & !axis_bit(m);
            let comp = old_full & !k;
            if comp == 0 {
                Decoration::plain(Atom::new(fresh_name.clone(), base_dim))
            } else {
                b.slot(comp).dual()
            }
        };
        slots.insert(s, d);
    }
    DecomposedBundle::assemble(m, slots, None)
}

/// The lower face of an (n+1)-fold completion omitting original axis `i`,
/// with the new axis `n+1` taking over the role of `i` (all other axes keep
/// their indices). For `completion = cotangent_completion(b, _)` this face
/// has the same decorations as `dual_axis(b, i)`.
pub fn lower_face(completion: &DecomposedBundle, i: AxisIndex) -> Result<DecomposedBundle> {
    let m = completion.n();
    if m < 2 || i == 0 || i >= m {
        return Err(Error::BadAxis { axis: i, n: m });
    }
    let axes: Vec<AxisIndex> = (1..m).map(|a| if a == i { m } else { a }).collect();
    completion.face_with_axes(&axes)
}

// ---------------------------------------------------------------------------
// Cornering signs
// ---------------------------------------------------------------------------

/// The ⊕/⊖ assignment on the six projection arrows of a double bundle and
/// its two duals: each total space emits one positive and one negative
/// arrow, and each corner (the two sides and the dual of the core) receives
/// one of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorneringAssignment {
    /// `(total space, corner)` ↦ sign, e.g. `("D^{*A}", "A") ↦ −1`.
    pub arrows: BTreeMap<(String, String), Sign>,
}

/// Compute the sign assignment for a double bundle. The two arrows of the
/// original bundle are fixed to (⊕ toward the first side, ⊖ toward the
/// second); the remaining four signs are found by exhaustive search subject
/// to the one-plus-one-minus constraints, and the solution is unique.
pub fn cornering_signs(b: &DecomposedBundle) -> Result<CorneringAssignment> {
    if b.n() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            found: b.n(),
        });
    }
    let a = b.slot(0b01).display_name();
    let bb = b.slot(0b10).display_name();
    let cstar = b.slot(0b11).dual().display_name();
    let d = "D".to_string();
    let da = format!("D^{{*{a}}}");
    let db = format!("D^{{*{bb}}}");
    // Arrow list: (total, corner). D's two arrows are fixed; the four
    // remaining signs are searched exhaustively.
    let free: [(String, String); 4] = [
        (da.clone(), a.clone()),
        (da.clone(), cstar.clone()),
        (db.clone(), bb.clone()),
        (db.clone(), cstar.clone()),
    ];
    let mut solutions = Vec::new();
    for bits in 0..16u8 {
        let sign_of = |k: usize| {
            if bits & (1 << k) != 0 {
                Sign::PLUS
            } else {
                Sign::MINUS
            }
        };
        let mut arrows = BTreeMap::new();
        arrows.insert((d.clone(), a.clone()), Sign::PLUS);
        arrows.insert((d.clone(), bb.clone()), Sign::MINUS);
        for (k, arrow) in free.iter().enumerate() {
            arrows.insert(arrow.clone(), sign_of(k));
        }
        // each total emits one of each sign
        let emits_ok = [&d, &da, &db].iter().all(|t| {
            let signs: Vec<Sign> = arrows
                .iter()
                .filter(|((tt, _), _)| tt == *t)
                .map(|(_, &s)| s)
                .collect();
            signs.len() == 2 && signs[0] != signs[1]
        });
        // each corner receives one of each sign
        let receives_ok = [&a, &bb, &cstar].iter().all(|c| {
            let signs: Vec<Sign> = arrows
                .iter()
                .filter(|((_, cc), _)| cc == *c)
                .map(|(_, &s)| s)
                .collect();
            signs.len() == 2 && signs[0] != signs[1]
        });
        if emits_ok && receives_ok {
            solutions.push(CorneringAssignment { arrows });
        }
    }
    match solutions.len() {
        1 => Ok(solutions.pop().expect("just checked")),
        k => Err(Error::CertificateInvalid(format!(
            "cornering sign search found {k} solutions, expected exactly 1"
        ))),
    }
}
