//! Decorated subset lattices: decomposed n-fold vector bundles.
//!
//! # Representation
//!
//! An n-fold vector bundle in trivial (split) form is determined by one
//! building vector bundle per nonempty subset of its n axes. We call the
//! subsets *slots* and represent them as bitmasks: bit `i - 1` set means
//! axis `i` belongs to the slot. For n = 2 the three slots are the two side
//! bundles ({1}, {2}) and the core ({1,2}); for n = 3 the seven slots are
//! three side bundles, three cores of the lower double bundles, and the
//! ultracore (the full subset).
//!
//! Each slot carries a [`Decoration`]: an [`Atom`] (a named building bundle
//! with a fiber dimension), a dual parity (has the atom been dualized an odd
//! number of times?), and a ±1 sign. Double duals are collapsed using the
//! canonical reflexivity of finite-dimensional duals, which carries sign +1;
//! all −1 factors produced by the duality calculus live in the explicit
//! `sign` fields.
//!
//! In addition, a bundle carries one *evaluation sign vector* per axis:
//! a ±1 value for every slot containing that axis. These record the signs
//! with which the canonical pairing between the bundle and its dual along
//! that axis evaluates slotwise; they start as all +1 on a freshly built
//! trivial bundle and are transformed by dualization (see
//! [`crate::duality`]).
//!
//! The axis *arrangement* is significant data: exchanging two axes is an
//! explicit [`DecomposedBundle::flip`] operation, not an identification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Axis index, 1-based: `1..=n`.
pub type AxisIndex = u8;

/// A slot: a nonempty subset of `{1..n}` as a bitmask (bit `i-1` ⇔ axis `i`).
pub type SlotMask = u32;

/// Bitmask of the full axis set `{1..n}`.
pub fn full_mask(n: u8) -> SlotMask {
    (1u32 << n) - 1
}

/// Bit for one axis.
pub fn axis_bit(i: AxisIndex) -> SlotMask {
    1u32 << (i - 1)
}

/// Convert a slot mask to the sorted list of axes it contains.
pub fn mask_to_subset(mask: SlotMask) -> Vec<AxisIndex> {
    (1..=32).filter(|&i| mask & axis_bit(i) != 0).collect()
}

/// Convert a list of axes to a slot mask.
pub fn subset_to_mask(subset: &[AxisIndex]) -> SlotMask {
    subset.iter().fold(0, |m, &i| m | axis_bit(i))
}

/// All nonempty subsets of `{1..n}` in increasing bitmask order.
pub fn all_slots(n: u8) -> impl Iterator<Item = SlotMask> {
    1..=full_mask(n)
}

/// A sign: +1 or −1, with multiplicative structure.
///
/// Serialized as the integer `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct Sign(i8);

impl Sign {
    pub const PLUS: Sign = Sign(1);
    pub const MINUS: Sign = Sign(-1);

    /// The sign as ±1.
    pub fn value(self) -> i8 {
        self.0
    }

    /// As a float factor (for the numeric models).
    pub fn factor(self) -> f64 {
        f64::from(self.0)
    }

    pub fn is_plus(self) -> bool {
        self.0 == 1
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 * rhs.0)
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(-self.0)
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::PLUS),
            -1 => Ok(Sign::MINUS),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.0
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.is_plus() { "+1" } else { "-1" })
    }
}

/// A building vector bundle: a name and a fiber dimension.
///
/// Zero-dimensional atoms are allowed (the cotangent completion over a point
/// produces one). Names must be unique within a bundle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub name: String,
    pub dim: usize,
}

impl Atom {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Atom {
            name: name.into(),
            dim,
        }
    }
}

/// What one slot holds: an atom, whether it currently appears dualized
/// (parity mod 2 after reflexivity collapsing), and a ±1 sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Decoration {
    pub atom: Atom,
    pub dual_parity: u8,
    pub sign: Sign,
}

impl Decoration {
    pub fn plain(atom: Atom) -> Self {
        Decoration {
            atom,
            dual_parity: 0,
            sign: Sign::PLUS,
        }
    }

    /// The decoration with parity flipped (the dual of this content).
    /// Reflexivity is sign-free: dualizing twice returns the original.
    pub fn dual(&self) -> Self {
        Decoration {
            atom: self.atom.clone(),
            dual_parity: self.dual_parity ^ 1,
            sign: self.sign,
        }
    }

    /// Display name: the atom name with a star when the parity is odd,
    /// e.g. `B*`.
    pub fn display_name(&self) -> String {
        if self.dual_parity == 1 {
            format!("{}*", self.atom.name)
        } else {
            self.atom.name.clone()
        }
    }

    /// Same atom and parity (ignores the sign).
    pub fn same_content(&self, other: &Decoration) -> bool {
        self.atom == other.atom && self.dual_parity == other.dual_parity
    }
}

/// A decomposed n-fold vector bundle: a total decoration map on the nonempty
/// subsets of `{1..n}`, plus per-axis evaluation sign vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedBundle {
    n: u8,
    slots: BTreeMap<SlotMask, Decoration>,
    axis_signs: BTreeMap<(AxisIndex, SlotMask), Sign>,
}

impl DecomposedBundle {
    /// Build the trivial bundle from one atom per slot: dual parity 0,
    /// sign +1 and all evaluation signs +1 everywhere.
    ///
    /// Fails with [`Error::MissingSlot`] if some nonempty subset has no
    /// atom, and with [`Error::DuplicateAtom`] if two atoms share a name.
    pub fn build_trivial(n: u8, atoms: &BTreeMap<SlotMask, Atom>) -> Result<Self> {
        assert!((1..=16).contains(&n), "arity out of supported range");
        let mut slots = BTreeMap::new();
        let mut seen_names = std::collections::BTreeSet::new();
        for mask in all_slots(n) {
            let atom = atoms.get(&mask).ok_or_else(|| Error::MissingSlot {
                subset: format!("{:?}", mask_to_subset(mask)),
            })?;
            if !seen_names.insert(atom.name.clone()) {
                return Err(Error::DuplicateAtom {
                    name: atom.name.clone(),
                });
            }
            slots.insert(mask, Decoration::plain(atom.clone()));
        }
        Ok(Self::assemble(n, slots, None))
    }

    /// Internal constructor from complete parts. When `axis_signs` is `None`
    /// all evaluation signs are +1.
    pub(crate) fn assemble(
        n: u8,
        slots: BTreeMap<SlotMask, Decoration>,
        axis_signs: Option<BTreeMap<(AxisIndex, SlotMask), Sign>>,
    ) -> Self {
        debug_assert_eq!(slots.len() as u32, full_mask(n));
        let axis_signs = axis_signs.unwrap_or_else(|| {
            let mut m = BTreeMap::new();
            for i in 1..=n {
                for mask in all_slots(n) {
                    if mask & axis_bit(i) != 0 {
                        m.insert((i, mask), Sign::PLUS);
                    }
                }
            }
            m
        });
        DecomposedBundle {
            n,
            slots,
            axis_signs,
        }
    }

    /// The arity n.
    pub fn n(&self) -> u8 {
        self.n
    }

    /// The decoration at one slot. Panics on an invalid mask (masks are
    /// internal values; external input is validated at construction).
    pub fn slot(&self, mask: SlotMask) -> &Decoration {
        &self.slots[&mask]
    }

    /// Iterate over `(mask, decoration)` in increasing mask order.
    pub fn slots(&self) -> impl Iterator<Item = (SlotMask, &Decoration)> {
        self.slots.iter().map(|(&m, d)| (m, d))
    }

    /// The evaluation sign of axis `i` at a slot containing `i`.
    pub fn axis_sign(&self, i: AxisIndex, mask: SlotMask) -> Sign {
        self.axis_signs[&(i, mask)]
    }

    /// Full evaluation sign table.
    pub fn axis_signs(&self) -> &BTreeMap<(AxisIndex, SlotMask), Sign> {
        &self.axis_signs
    }

    /// True when every decoration sign and every evaluation sign is +1.
    pub fn all_signs_plus(&self) -> bool {
        self.slots.values().all(|d| d.sign.is_plus())
            && self.axis_signs.values().all(|s| s.is_plus())
    }

    /// Equality of shape and contents — atoms, dimensions, parities and
    /// decoration signs — ignoring the evaluation sign vectors.
    pub fn same_decorations(&self, other: &DecomposedBundle) -> bool {
        self.n == other.n && self.slots == other.slots
    }

    fn check_axis(&self, i: AxisIndex) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::BadAxis { axis: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// The lower face spanned by a nonempty subset of the axes, with the
    /// chosen axes renumbered `1..k` in increasing order. Decorations are
    /// copied and the evaluation signs restricted.
    pub fn face(&self, axes_mask: SlotMask) -> Result<DecomposedBundle> {
        if axes_mask == 0 {
            return Err(Error::EmptyFace);
        }
        if axes_mask & !full_mask(self.n) != 0 {
            let bad = mask_to_subset(axes_mask & !full_mask(self.n))[0];
            return Err(Error::BadAxis {
                axis: bad,
                n: self.n,
            });
        }
        self.face_with_axes(&mask_to_subset(axes_mask))
    }

    /// The lower face spanned by the listed (distinct) axes, where new axis
    /// `k` is old axis `axes[k-1]`. This generalizes [`Self::face`] by
    /// allowing an arbitrary arrangement of the chosen axes.
    pub fn face_with_axes(&self, axes: &[AxisIndex]) -> Result<DecomposedBundle> {
        if axes.is_empty() {
            return Err(Error::EmptyFace);
        }
        for &a in axes {
            self.check_axis(a)?;
        }
        let k = axes.len() as u8;
        let old_mask = |new: SlotMask| -> SlotMask {
            let mut m = 0;
            for (idx, &a) in axes.iter().enumerate() {
                if new & (1 << idx) != 0 {
                    m |= axis_bit(a);
                }
            }
            m
        };
        let mut slots = BTreeMap::new();
        let mut signs = BTreeMap::new();
        for new in all_slots(k) {
            let old = old_mask(new);
            slots.insert(new, self.slots[&old].clone());
            for (idx, &a) in axes.iter().enumerate() {
                let new_axis = (idx + 1) as AxisIndex;
                if new & axis_bit(new_axis) != 0 {
                    signs.insert((new_axis, new), self.axis_signs[&(a, old)]);
                }
            }
        }
        Ok(DecomposedBundle {
            n: k,
            slots,
            axis_signs: signs,
        })
    }

    /// The i-th core double vector bundle of a triple: sides are the core
    /// opposite to axis `i` (vertical) and the side bundle of axis `i`
    /// (horizontal); the core slot is the ultracore.
    ///
    /// Evaluation signs of the result are reset to +1: the extraction is a
    /// shape/content operation, not a face of the subset lattice.
    pub fn core_dvb(&self, i: AxisIndex) -> Result<DecomposedBundle> {
        if self.n != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                found: self.n,
            });
        }
        self.check_axis(i)?;
        let full = full_mask(3);
        let mut slots = BTreeMap::new();
        slots.insert(1, self.slots[&(full ^ axis_bit(i))].clone());
        slots.insert(2, self.slots[&axis_bit(i)].clone());
        slots.insert(3, self.slots[&full].clone());
        Ok(DecomposedBundle::assemble(2, slots, None))
    }

    /// The decoration of the full slot `{1..n}` (for n = 2 this is the
    /// ordinary core).
    pub fn ultracore(&self) -> &Decoration {
        &self.slots[&full_mask(self.n)]
    }

    /// Exchange two axes in every slot index, carrying decorations and
    /// evaluation signs along. Flipping along equal axes is a no-op and
    /// logs a warning (`IdentityFlip`) rather than failing.
    pub fn flip(&self, i: AxisIndex, j: AxisIndex) -> Result<DecomposedBundle> {
        self.check_axis(i)?;
        self.check_axis(j)?;
        if i == j {
            log::warn!("IdentityFlip: flip along equal axes {i} is a no-op");
            return Ok(self.clone());
        }
        let transpose = |mask: SlotMask| -> SlotMask {
            let mut m = mask & !(axis_bit(i) | axis_bit(j));
            if mask & axis_bit(i) != 0 {
                m |= axis_bit(j);
            }
            if mask & axis_bit(j) != 0 {
                m |= axis_bit(i);
            }
            m
        };
        let taxis = |a: AxisIndex| -> AxisIndex {
            if a == i {
                j
            } else if a == j {
                i
            } else {
                a
            }
        };
        let slots = self
            .slots
            .iter()
            .map(|(&m, d)| (transpose(m), d.clone()))
            .collect();
        let signs = self
            .axis_signs
            .iter()
            .map(|(&(a, m), &s)| ((taxis(a), transpose(m)), s))
            .collect();
        Ok(DecomposedBundle {
            n: self.n,
            slots,
            axis_signs: signs,
        })
    }

    /// Total fiber dimension over a point base: the sum of all slot
    /// dimensions.
    pub fn total_dim(&self) -> usize {
        self.slots.values().map(|d| d.atom.dim).sum()
    }

    /// Render the cube diagram in DOT format: one node per corner (subset of
    /// axes, including the empty corner labeled `M`), and one directed
    /// projection edge from each corner to each corner with one axis
    /// removed. Corner labels list the slots lying over the corner.
    pub fn render_dot(&self) -> Result<String> {
        if self.n > 4 {
            return Err(Error::TooLargeToRender { n: self.n });
        }
        let mut out = String::from("digraph bundle {\n  rankdir=BT;\n");
        for corner in 0..=full_mask(self.n) {
            let label = if corner == 0 {
                "M".to_string()
            } else {
                let names: Vec<String> = self
                    .slots
                    .iter()
                    .filter(|(&m, _)| m & !corner == 0)
                    .map(|(_, d)| d.display_name())
                    .collect();
                names.join("\\u2295") // ⊕ between the summands over this corner
            };
            out.push_str(&format!("  c{corner} [label=\"{label}\"];\n"));
        }
        for corner in 1..=full_mask(self.n) {
            for i in 1..=self.n {
                if corner & axis_bit(i) != 0 {
                    out.push_str(&format!(
                        "  c{corner} -> c{} [label=\"q{}\"];\n",
                        corner ^ axis_bit(i),
                        i
                    ));
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    // ----- JSON spec format -----------------------------------------------

    /// Parse a bundle from the JSON spec format:
    /// `{"n": 2, "slots": [{"subset": [1], "name": "A", "dim": 2,
    /// "dualParity": 0, "sign": 1}, …]}` where `dualParity` and `sign`
    /// default to 0 and +1.
    pub fn from_json(text: &str) -> Result<DecomposedBundle> {
        let spec: BundleSpec =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("bundle spec: {e}")))?;
        spec.into_bundle()
    }

    /// Serialize to the JSON spec format (pretty-printed, slots in
    /// increasing mask order). `load(save(b))` is the identity on the
    /// decoration data; evaluation signs are not part of the file format
    /// and must be +1 (the format describes trivial bundles and their
    /// dualizations are recomputed, not stored).
    pub fn to_json(&self) -> String {
        let spec = BundleSpec {
            n: self.n,
            slots: self
                .slots
                .iter()
                .map(|(&m, d)| SlotSpec {
                    subset: mask_to_subset(m),
                    name: d.atom.name.clone(),
                    dim: d.atom.dim,
                    dual_parity: d.dual_parity,
                    sign: d.sign,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&spec).expect("bundle spec serialization cannot fail")
    }
}

fn default_sign() -> Sign {
    Sign::PLUS
}

#[derive(Serialize, Deserialize)]
struct SlotSpec {
    subset: Vec<AxisIndex>,
    name: String,
    dim: usize,
    #[serde(rename = "dualParity", default)]
    dual_parity: u8,
    #[serde(default = "default_sign")]
    sign: Sign,
}

#[derive(Serialize, Deserialize)]
struct BundleSpec {
    n: u8,
    slots: Vec<SlotSpec>,
}

impl BundleSpec {
    fn into_bundle(self) -> Result<DecomposedBundle> {
        if self.n == 0 || self.n > 16 {
            return Err(Error::parse(format!("unsupported arity n = {}", self.n)));
        }
        let mut slots = BTreeMap::new();
        let mut names = std::collections::BTreeSet::new();
        for s in &self.slots {
            if s.subset.is_empty() {
                return Err(Error::parse("slot with empty subset".to_string()));
            }
            for &a in &s.subset {
                if a == 0 || a > self.n {
                    return Err(Error::BadAxis { axis: a, n: self.n });
                }
            }
            if s.dual_parity > 1 {
                return Err(Error::parse(format!(
                    "slot {:?}: dualParity must be 0 or 1",
                    s.subset
                )));
            }
            let mask = subset_to_mask(&s.subset);
            if !names.insert(s.name.clone()) {
                return Err(Error::DuplicateAtom {
                    name: s.name.clone(),
                });
            }
            if slots
                .insert(
                    mask,
                    Decoration {
                        atom: Atom::new(s.name.clone(), s.dim),
                        dual_parity: s.dual_parity,
                        sign: s.sign,
                    },
                )
                .is_some()
            {
                return Err(Error::parse(format!("slot {:?} given twice", s.subset)));
            }
        }
        for mask in all_slots(self.n) {
            if !slots.contains_key(&mask) {
                return Err(Error::MissingSlot {
                    subset: format!("{:?}", mask_to_subset(mask)),
                });
            }
        }
        Ok(DecomposedBundle::assemble(self.n, slots, None))
    }
}

/// The standard trivial double vector bundle (A, B; C) with the given fiber
/// dimensions — a convenience used widely in tests and by the CLI.
pub fn trivial_double(da: usize, db: usize, dc: usize) -> DecomposedBundle {
    let mut atoms = BTreeMap::new();
    atoms.insert(subset_to_mask(&[1]), Atom::new("A", da));
    atoms.insert(subset_to_mask(&[2]), Atom::new("B", db));
    atoms.insert(subset_to_mask(&[1, 2]), Atom::new("C", dc));
    DecomposedBundle::build_trivial(2, &atoms).expect("complete atom map")
}

/// The standard trivial triple vector bundle with side bundles E1, E2, E3,
/// cores C1, C2, C3 (Ci sits at the pair slot not containing axis i) and
/// ultracore W, all of the given dimension.
pub fn trivial_triple(dim: usize) -> DecomposedBundle {
    let mut atoms = BTreeMap::new();
    for i in 1..=3u8 {
        atoms.insert(axis_bit(i), Atom::new(format!("E{i}"), dim));
        atoms.insert(full_mask(3) ^ axis_bit(i), Atom::new(format!("C{i}"), dim));
    }
    atoms.insert(full_mask(3), Atom::new("W", dim));
    DecomposedBundle::build_trivial(3, &atoms).expect("complete atom map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_trivial_double() {
        let b = trivial_double(2, 3, 2);
        assert_eq!(b.n(), 2);
        assert_eq!(b.slot(0b01).atom.name, "A");
        assert_eq!(b.slot(0b10).atom.name, "B");
        assert_eq!(b.slot(0b11).atom.name, "C");
        assert!(b.all_signs_plus());
        assert_eq!(b.total_dim(), 7);
    }

    #[test]
    fn build_trivial_single_is_plain_vector_bundle() {
        let mut atoms = BTreeMap::new();
        atoms.insert(1, Atom::new("E", 5));
        let b = DecomposedBundle::build_trivial(1, &atoms).unwrap();
        assert_eq!(b.total_dim(), 5);
        assert_eq!(b.ultracore().atom.name, "E");
    }

    #[test]
    fn build_trivial_missing_slot() {
        let mut atoms = BTreeMap::new();
        atoms.insert(1, Atom::new("A", 1));
        atoms.insert(2, Atom::new("B", 1));
        match DecomposedBundle::build_trivial(2, &atoms) {
            Err(Error::MissingSlot { subset }) => assert_eq!(subset, "[1, 2]"),
            other => panic!("expected MissingSlot, got {other:?}"),
        }
    }

    #[test]
    fn build_trivial_duplicate_atom() {
        let mut atoms = BTreeMap::new();
        atoms.insert(1, Atom::new("A", 1));
        atoms.insert(2, Atom::new("A", 1));
        atoms.insert(3, Atom::new("C", 1));
        assert!(matches!(
            DecomposedBundle::build_trivial(2, &atoms),
            Err(Error::DuplicateAtom { .. })
        ));
    }

    #[test]
    fn face_of_triple_floor() {
        let t = trivial_triple(1);
        let floor = t.face(subset_to_mask(&[2, 3])).unwrap();
        assert_eq!(floor.n(), 2);
        assert_eq!(floor.slot(0b01).atom.name, "E2");
        assert_eq!(floor.slot(0b10).atom.name, "E3");
        assert_eq!(floor.slot(0b11).atom.name, "C1");
    }

    #[test]
    fn face_identity_and_singleton() {
        let t = trivial_triple(2);
        assert_eq!(t.face(full_mask(3)).unwrap(), t);
        let e1 = t.face(subset_to_mask(&[1])).unwrap();
        assert_eq!(e1.n(), 1);
        assert_eq!(e1.slot(1).atom.name, "E1");
    }

    #[test]
    fn face_composes() {
        let t = trivial_triple(2);
        // face(face(b, {1,3}), {2}) picks new axis 2 of the {1,3}-face,
        // i.e. old axis 3 — the same as face(b, {3}).
        let f13 = t.face(subset_to_mask(&[1, 3])).unwrap();
        let f2 = f13.face(subset_to_mask(&[2])).unwrap();
        assert_eq!(f2, t.face(subset_to_mask(&[3])).unwrap());
    }

    #[test]
    fn face_errors() {
        let t = trivial_triple(1);
        assert!(matches!(t.face(0), Err(Error::EmptyFace)));
        assert!(matches!(
            t.face(0b1000),
            Err(Error::BadAxis { axis: 4, .. })
        ));
    }

    #[test]
    fn core_dvbs_share_ultracore() {
        let t = trivial_triple(1);
        let c1 = t.core_dvb(1).unwrap();
        assert_eq!(c1.slot(0b01).atom.name, "C1");
        assert_eq!(c1.slot(0b10).atom.name, "E1");
        assert_eq!(c1.slot(0b11).atom.name, "W");
        let c3 = t.core_dvb(3).unwrap();
        assert_eq!(c3.slot(0b01).atom.name, "C3");
        assert_eq!(c3.slot(0b10).atom.name, "E3");
        for i in 1..=3 {
            assert_eq!(t.core_dvb(i).unwrap().ultracore(), t.ultracore());
        }
        assert!(matches!(
            trivial_double(1, 1, 1).core_dvb(1),
            Err(Error::WrongArity { .. })
        ));
    }

    #[test]
    fn flip_swaps_slots_and_is_involutive() {
        let b = trivial_double(2, 3, 4);
        let f = b.flip(1, 2).unwrap();
        assert_eq!(f.slot(0b01).atom.name, "B");
        assert_eq!(f.slot(0b10).atom.name, "A");
        assert_eq!(f.slot(0b11).atom.name, "C");
        assert_eq!(f.flip(1, 2).unwrap(), b);
        // flip along equal axes: warning-level no-op
        assert_eq!(b.flip(1, 1).unwrap(), b);
    }

    #[test]
    fn flip_of_triple_fixes_opposite_core_and_ultracore() {
        let t = trivial_triple(1);
        let f = t.flip(2, 3).unwrap();
        assert_eq!(f.slot(axis_bit(2)).atom.name, "E3");
        assert_eq!(f.slot(axis_bit(3)).atom.name, "E2");
        assert_eq!(f.slot(full_mask(3) ^ axis_bit(2)).atom.name, "C3");
        assert_eq!(f.slot(full_mask(3) ^ axis_bit(3)).atom.name, "C2");
        assert_eq!(f.slot(full_mask(3) ^ axis_bit(1)).atom.name, "C1");
        assert_eq!(f.ultracore().atom.name, "W");
    }

    #[test]
    fn render_dot_nodes_and_edges() {
        let b = trivial_double(1, 1, 1);
        let dot = b.render_dot().unwrap();
        assert!(dot.contains("c0 [label=\"M\"]"));
        assert!(dot.contains("c1 [label=\"A\"]"));
        assert!(dot.contains("c2 [label=\"B\"]"));
        assert_eq!(dot.matches("->").count(), 4);

        let t = trivial_triple(1);
        let dot3 = t.render_dot().unwrap();
        // 8 corner nodes, 12 cube edges
        assert_eq!(dot3.matches("[label=\"q").count(), 12);

        let mut atoms = BTreeMap::new();
        atoms.insert(1, Atom::new("E", 1));
        let single = DecomposedBundle::build_trivial(1, &atoms).unwrap();
        assert_eq!(single.render_dot().unwrap().matches("->").count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let b = trivial_double(2, 3, 2);
        let b2 = DecomposedBundle::from_json(&b.to_json()).unwrap();
        assert_eq!(b, b2);
    }

    #[test]
    fn json_defaults_and_validation() {
        let ok = r#"{"n":2,"slots":[
            {"subset":[1],"name":"A","dim":2},
            {"subset":[2],"name":"B","dim":3},
            {"subset":[1,2],"name":"C","dim":2,"dualParity":1,"sign":-1}]}"#;
        let b = DecomposedBundle::from_json(ok).unwrap();
        assert_eq!(b.slot(0b11).dual_parity, 1);
        assert_eq!(b.slot(0b11).sign, Sign::MINUS);
        assert_eq!(b.slot(0b11).display_name(), "C*");

        let missing = r#"{"n":2,"slots":[
            {"subset":[1],"name":"A","dim":2},
            {"subset":[2],"name":"B","dim":3}]}"#;
        assert!(matches!(
            DecomposedBundle::from_json(missing),
            Err(Error::MissingSlot { .. })
        ));

        let bad_sign = r#"{"n":1,"slots":[{"subset":[1],"name":"A","dim":2,"sign":2}]}"#;
        assert!(matches!(
            DecomposedBundle::from_json(bad_sign),
            Err(Error::SpecParseError { .. })
        ));
    }
}
