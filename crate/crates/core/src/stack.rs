//! Stack representations and flip semantics.
//!
//! Position 0 of every entry vector is the top of the stack. Burnt stacks are
//! signed permutations: `+i` is pancake `i` burnt side down, `-i` burnt side up.

use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};

/// Which of the two sorting problems a stack belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Burnt,
    Unburnt,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Burnt => "burnt",
            Variant::Unburnt => "unburnt",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = PancakeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "burnt" => Ok(Variant::Burnt),
            "unburnt" => Ok(Variant::Unburnt),
            other => Err(PancakeError::invalid(format!("unknown variant `{other}`"))),
        }
    }
}

/// The named burnt stacks studied as worst-case candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialStack {
    Identity,
    NegIdentity,
    /// `-I_n` with the top pancake turned over.
    J,
    /// `-I_n` with the second pancake from the bottom turned over.
    Y,
}

fn check_permutation<I: IntoIterator<Item = usize>>(labels: I, n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for (pos, label) in labels.into_iter().enumerate() {
        if label == 0 || label > n {
            return Err(PancakeError::invalid(format!(
                "label {label} at position {} is outside 1..={n}",
                pos + 1
            )));
        }
        if std::mem::replace(&mut seen[label], true) {
            return Err(PancakeError::invalid(format!(
                "label {label} repeated at position {}",
                pos + 1
            )));
        }
    }
    Ok(())
}

fn check_flip(i: usize, n: usize) -> Result<()> {
    if i > n {
        return Err(PancakeError::invalid(format!(
            "flip size {i} exceeds stack size {n}"
        )));
    }
    Ok(())
}

/// A stack of burnt pancakes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BurntStack {
    entries: Vec<i32>,
}

impl BurntStack {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(PancakeError::invalid(
                "stack must hold at least one pancake",
            ));
        }
        let n = entries.len();
        if entries.contains(&0) {
            return Err(PancakeError::invalid("pancake label 0 is not allowed"));
        }
        check_permutation(entries.iter().map(|e| e.unsigned_abs() as usize), n)?;
        Ok(BurntStack { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<i32>) -> Self {
        debug_assert!(BurntStack::new(entries.clone()).is_ok());
        BurntStack { entries }
    }

    pub fn identity(n: usize) -> Self {
        BurntStack {
            entries: (1..=n as i32).collect(),
        }
    }

    pub fn special(kind: SpecialStack, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(PancakeError::invalid("stack size must be at least 1"));
        }
        let mut entries: Vec<i32> = (1..=n as i32).map(|i| -i).collect();
        match kind {
            SpecialStack::Identity => entries.iter_mut().for_each(|e| *e = -*e),
            SpecialStack::NegIdentity => {}
            SpecialStack::J => entries[0] = 1,
            SpecialStack::Y => {
                if n < 2 {
                    return Err(PancakeError::invalid("Y_n needs at least two pancakes"));
                }
                entries[n - 2] = n as i32 - 1;
            }
        }
        Ok(BurntStack { entries })
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flip(&self, i: usize) -> Result<Self> {
        check_flip(i, self.len())?;
        let mut out = self.clone();
        out.flip_in_place(i);
        Ok(out)
    }

    /// Panics if `i > len`.
    pub fn flip_in_place(&mut self, i: usize) {
        flip_signed(&mut self.entries, i);
    }

    /// `-C`: every pancake turned over, order kept.
    pub fn negated(&self) -> Self {
        BurntStack {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// Group inverse of the signed permutation. Has the same flip distance.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0i32; self.len()];
        for (pos, &e) in self.entries.iter().enumerate() {
            let label = e.unsigned_abs() as usize;
            inv[label - 1] = e.signum() * (pos as i32 + 1);
        }
        BurntStack { entries: inv }
    }

    pub fn is_sorted(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(pos, &e)| e == pos as i32 + 1)
    }
}

/// Reverse the first `i` entries and turn each of them over.
pub(crate) fn flip_signed(entries: &mut [i32], i: usize) {
    let prefix = &mut entries[..i];
    prefix.reverse();
    prefix.iter_mut().for_each(|e| *e = -*e);
}

/// A stack of unburnt pancakes; entries are a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnburntStack {
    entries: Vec<u32>,
}

impl UnburntStack {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(PancakeError::invalid(
                "stack must hold at least one pancake",
            ));
        }
        let n = entries.len();
        check_permutation(entries.iter().map(|&e| e as usize), n)?;
        Ok(UnburntStack { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(UnburntStack::new(entries.clone()).is_ok());
        UnburntStack { entries }
    }

    pub fn identity(n: usize) -> Self {
        UnburntStack {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Flips of size 0 and 1 leave an unburnt stack unchanged.
    pub fn flip(&self, i: usize) -> Result<Self> {
        check_flip(i, self.len())?;
        let mut out = self.clone();
        out.flip_in_place(i);
        Ok(out)
    }

    pub fn flip_in_place(&mut self, i: usize) {
        self.entries[..i].reverse();
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.len()];
        for (pos, &e) in self.entries.iter().enumerate() {
            inv[e as usize - 1] = pos as u32 + 1;
        }
        UnburntStack { entries: inv }
    }

    pub fn is_sorted(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(pos, &e)| e == pos as u32 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Down,
    Up,
    Unburnt,
}

impl Orientation {
    pub fn toggled(self) -> Self {
        match self {
            Orientation::Down => Orientation::Up,
            Orientation::Up => Orientation::Down,
            Orientation::Unburnt => Orientation::Unburnt,
        }
    }

    pub fn is_burnt(self) -> bool {
        self != Orientation::Unburnt
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedPancake {
    pub label: u32,
    pub orientation: Orientation,
}

impl MixedPancake {
    pub fn new(label: u32, orientation: Orientation) -> Self {
        MixedPancake { label, orientation }
    }

    /// Signed value of a burnt pancake; `None` when unburnt.
    pub fn signed(self) -> Option<i32> {
        match self.orientation {
            Orientation::Down => Some(self.label as i32),
            Orientation::Up => Some(-(self.label as i32)),
            Orientation::Unburnt => None,
        }
    }
}

/// A stack where some pancakes are burnt and some are not.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedStack {
    entries: Vec<MixedPancake>,
}

impl MixedStack {
    pub fn new(entries: Vec<MixedPancake>) -> Result<Self> {
        if entries.is_empty() {
            return Err(PancakeError::invalid(
                "stack must hold at least one pancake",
            ));
        }
        let n = entries.len();
        check_permutation(entries.iter().map(|p| p.label as usize), n)?;
        Ok(MixedStack { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<MixedPancake>) -> Self {
        MixedStack { entries }
    }

    pub fn entries(&self) -> &[MixedPancake] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of burnt pancakes in the stack.
    pub fn burnt_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|p| p.orientation.is_burnt())
            .count()
    }

    pub fn flip(&self, i: usize) -> Result<Self> {
        check_flip(i, self.len())?;
        let mut out = self.clone();
        out.flip_in_place(i);
        Ok(out)
    }

    pub fn flip_in_place(&mut self, i: usize) {
        flip_mixed(&mut self.entries, i);
    }

    /// Sorted by label with every burnt pancake burnt side down.
    pub fn is_sorted(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(pos, p)| p.label == pos as u32 + 1 && p.orientation != Orientation::Up)
    }
}

pub(crate) fn flip_mixed(entries: &mut [MixedPancake], i: usize) {
    let prefix = &mut entries[..i];
    prefix.reverse();
    prefix
        .iter_mut()
        .for_each(|p| p.orientation = p.orientation.toggled());
}

impl From<&BurntStack> for MixedStack {
    fn from(s: &BurntStack) -> Self {
        MixedStack {
            entries: s
                .entries()
                .iter()
                .map(|&e| {
                    let o = if e > 0 {
                        Orientation::Down
                    } else {
                        Orientation::Up
                    };
                    MixedPancake::new(e.unsigned_abs(), o)
                })
                .collect(),
        }
    }
}

impl From<&UnburntStack> for MixedStack {
    fn from(s: &UnburntStack) -> Self {
        MixedStack {
            entries: s
                .entries()
                .iter()
                .map(|&e| MixedPancake::new(e, Orientation::Unburnt))
                .collect(),
        }
    }
}

/// Any of the three stack kinds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", content = "entries", rename_all = "lowercase")]
pub enum AnyStack {
    Burnt(BurntStack),
    Unburnt(UnburntStack),
    Mixed(MixedStack),
}

impl AnyStack {
    pub fn len(&self) -> usize {
        match self {
            AnyStack::Burnt(s) => s.len(),
            AnyStack::Unburnt(s) => s.len(),
            AnyStack::Mixed(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flip(&self, i: usize) -> Result<Self> {
        Ok(match self {
            AnyStack::Burnt(s) => AnyStack::Burnt(s.flip(i)?),
            AnyStack::Unburnt(s) => AnyStack::Unburnt(s.flip(i)?),
            AnyStack::Mixed(s) => AnyStack::Mixed(s.flip(i)?),
        })
    }

    pub fn flip_in_place(&mut self, i: usize) {
        match self {
            AnyStack::Burnt(s) => s.flip_in_place(i),
            AnyStack::Unburnt(s) => s.flip_in_place(i),
            AnyStack::Mixed(s) => s.flip_in_place(i),
        }
    }

    pub fn is_sorted(&self) -> bool {
        match self {
            AnyStack::Burnt(s) => s.is_sorted(),
            AnyStack::Unburnt(s) => s.is_sorted(),
            AnyStack::Mixed(s) => s.is_sorted(),
        }
    }

    /// Unburnt input is read as every pancake burnt side down.
    pub fn to_burnt(&self) -> Result<BurntStack> {
        match self {
            AnyStack::Burnt(s) => Ok(s.clone()),
            AnyStack::Unburnt(s) => Ok(BurntStack::from_vec_unchecked(
                s.entries().iter().map(|&e| e as i32).collect(),
            )),
            AnyStack::Mixed(s) => {
                let entries = s
                    .entries()
                    .iter()
                    .map(|p| p.signed().ok_or(()))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| PancakeError::invalid("stack contains unburnt pancakes"))?;
                Ok(BurntStack::from_vec_unchecked(entries))
            }
        }
    }

    /// Burnt input is accepted only when no pancake is burnt side up.
    pub fn to_unburnt(&self) -> Result<UnburntStack> {
        match self {
            AnyStack::Unburnt(s) => Ok(s.clone()),
            AnyStack::Burnt(s) => {
                if s.entries().iter().any(|&e| e < 0) {
                    return Err(PancakeError::invalid(
                        "unburnt stacks cannot hold burnt-side-up pancakes",
                    ));
                }
                Ok(UnburntStack::from_vec_unchecked(
                    s.entries().iter().map(|&e| e as u32).collect(),
                ))
            }
            AnyStack::Mixed(s) => {
                if s.entries().iter().any(|p| p.orientation.is_burnt()) {
                    return Err(PancakeError::invalid("stack contains burnt pancakes"));
                }
                Ok(UnburntStack::from_vec_unchecked(
                    s.entries().iter().map(|p| p.label).collect(),
                ))
            }
        }
    }
}

impl From<BurntStack> for AnyStack {
    fn from(s: BurntStack) -> Self {
        AnyStack::Burnt(s)
    }
}

impl From<UnburntStack> for AnyStack {
    fn from(s: UnburntStack) -> Self {
        AnyStack::Unburnt(s)
    }
}

impl From<MixedStack> for AnyStack {
    fn from(s: MixedStack) -> Self {
        AnyStack::Mixed(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn burnt(v: &[i32]) -> BurntStack {
        BurntStack::new(v.to_vec()).unwrap()
    }

    #[test]
    fn special_stacks() {
        assert_eq!(
            BurntStack::special(SpecialStack::NegIdentity, 3).unwrap(),
            burnt(&[-1, -2, -3])
        );
        assert_eq!(
            BurntStack::special(SpecialStack::J, 3).unwrap(),
            burnt(&[1, -2, -3])
        );
        assert_eq!(
            BurntStack::special(SpecialStack::Y, 4).unwrap(),
            burnt(&[-1, -2, 3, -4])
        );
        assert_eq!(
            BurntStack::special(SpecialStack::Identity, 4).unwrap(),
            BurntStack::identity(4)
        );
        assert_eq!(
            BurntStack::special(SpecialStack::J, 1).unwrap(),
            burnt(&[1])
        );
        assert!(BurntStack::special(SpecialStack::Identity, 0).is_err());
        assert!(BurntStack::special(SpecialStack::Y, 1).is_err());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(burnt(&[-1, -2, -3]).flip(3).unwrap(), burnt(&[3, 2, 1]));
        assert_eq!(burnt(&[2, 1, -3]).flip(2).unwrap(), burnt(&[-1, -2, -3]));
        let u = UnburntStack::new(vec![1, 3, 2]).unwrap();
        assert_eq!(u.flip(0).unwrap(), u);
        assert_eq!(u.flip(1).unwrap(), u);
        assert!(u.flip(4).is_err());
        assert_eq!(burnt(&[1]).flip(1).unwrap(), burnt(&[-1]));
    }

    #[test]
    fn mixed_flip_keeps_unburnt() {
        let s = MixedStack::new(vec![
            MixedPancake::new(2, Orientation::Unburnt),
            MixedPancake::new(3, Orientation::Down),
            MixedPancake::new(1, Orientation::Up),
        ])
        .unwrap();
        let f = s.flip(2).unwrap();
        assert_eq!(f.entries()[0], MixedPancake::new(3, Orientation::Up));
        assert_eq!(f.entries()[1], MixedPancake::new(2, Orientation::Unburnt));
        assert_eq!(f.entries()[2], MixedPancake::new(1, Orientation::Up));
        assert_eq!(s.burnt_count(), 2);
    }

    #[test]
    fn rejects_bad_stacks() {
        assert!(BurntStack::new(vec![]).is_err());
        assert!(BurntStack::new(vec![1, -1]).is_err());
        assert!(BurntStack::new(vec![1, 0]).is_err());
        assert!(BurntStack::new(vec![1, 3]).is_err());
        assert!(UnburntStack::new(vec![2, 2]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let s = burnt(&[3, -1, -2]);
        assert_eq!(s.inverse().inverse(), s);
        assert_eq!(s.inverse(), burnt(&[-2, -3, 1]));
    }

    #[test]
    fn sortedness() {
        assert!(BurntStack::identity(5).is_sorted());
        assert!(!burnt(&[1, -2]).is_sorted());
        let m = MixedStack::from(&UnburntStack::identity(3));
        assert!(m.is_sorted());
    }
}
