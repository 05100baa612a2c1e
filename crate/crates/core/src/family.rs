//! Finite set families in which any two distinct members share exactly one
//! element, and an exhaustive search for the largest such family on `[n]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a bitmask family may use.
pub const MAX_GROUND: u32 = 24;

/// Largest ground set the exhaustive search accepts.
pub const MAX_SEARCH_GROUND: u32 = 6;

/// Distinct non-empty subsets of `[n] = {1, …, n}`, element `i` stored as bit
/// `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct SetFamily {
    n: u32,
    members: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: u32,
    members: Vec<Vec<u32>>,
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        SetFamily::from_sets(j.n, &j.members)
    }
}

impl From<SetFamily> for FamilyJson {
    fn from(f: SetFamily) -> Self {
        FamilyJson { n: f.n, members: f.sets() }
    }
}

impl SetFamily {
    pub fn new(n: u32, members: Vec<u32>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidParameter(format!("ground set size {n} exceeds {MAX_GROUND}")));
        }
        let full = (1u32 << n) - 1;
        for (i, &m) in members.iter().enumerate() {
            if m == 0 {
                return Err(Error::InvalidParameter(format!("member {i} is empty")));
            }
            if m & !full != 0 {
                return Err(Error::InvalidParameter(format!("member {i} has elements outside [{n}]")));
            }
            if members[..i].contains(&m) {
                return Err(Error::InvalidParameter(format!("member {i} repeats an earlier member")));
            }
        }
        Ok(SetFamily { n, members })
    }

    /// Family from explicit element lists over `{1, …, n}`.
    pub fn from_sets(n: u32, sets: &[Vec<u32>]) -> Result<Self> {
        let mut members = Vec::with_capacity(sets.len());
        for s in sets {
            let mut mask = 0u32;
            for &e in s {
                if e == 0 || e > n {
                    return Err(Error::InvalidParameter(format!("element {e} outside 1..={n}")));
                }
                mask |= 1 << (e - 1);
            }
            members.push(mask);
        }
        Self::new(n, members)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members as sorted element lists.
    pub fn sets(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|&m| (1..=self.n).filter(|&e| m & (1 << (e - 1)) != 0).collect()).collect()
    }

    /// Members as 0/1 vectors of length `n`.
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        self.members.iter().map(|&m| (0..self.n).map(|i| ((m >> i) & 1) as u8).collect()).collect()
    }
}

fn meets_once(a: u32, b: u32) -> bool {
    (a & b).count_ones() == 1
}

/// Whether every two distinct members share exactly one element.
pub fn unique_intersection(f: &SetFamily) -> bool {
    let m = f.members();
    m.iter().enumerate().all(|(i, &a)| m[i + 1..].iter().all(|&b| meets_once(a, b)))
}

/// The same property on 0/1 vectors: for every two distinct vectors there is
/// exactly one index `i` with `x_i = y_i > 0`.
pub fn unique_positive_agreement(vectors: &[Vec<u8>]) -> bool {
    vectors
        .iter()
        .enumerate()
        .all(|(i, x)| vectors[i + 1..].iter().all(|y| x.iter().zip(y).filter(|(a, b)| a == b && **a > 0).count() == 1))
}

/// `{[n] \ {1}, {1,2}, {1,3}, …, {1,n}}`.
pub fn near_pencil(n: u32) -> Result<SetFamily> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("near-pencil needs n >= 3, got {n}")));
    }
    let full = (1u32 << n) - 1;
    let mut members = vec![full & !1];
    members.extend((1..n).map(|i| 1 | (1 << i)));
    SetFamily::new(n, members)
}

/// Candidates in search order: larger sets first, ties by bitmask value.
fn candidates(n: u32) -> Vec<u32> {
    let mut c: Vec<u32> = (1..(1u32 << n)).collect();
    c.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    c
}

struct Search<'a> {
    cands: &'a [u32],
    best: Vec<u32>,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<u32>, from: usize) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for i in from..self.cands.len() {
            if chosen.len() + (self.cands.len() - i) <= self.best.len() {
                return;
            }
            let c = self.cands[i];
            if chosen.iter().all(|&m| meets_once(m, c)) {
                chosen.push(c);
                self.extend(chosen, i + 1);
                chosen.pop();
            }
        }
    }
}

/// A largest family on `[n]` with the unique-intersection property, found
/// by branch and bound over all non-empty subsets.
pub fn max_family(n: u32) -> Result<SetFamily> {
    if !(1..=MAX_SEARCH_GROUND).contains(&n) {
        return Err(Error::InvalidParameter(format!("search supports 1 <= n <= {MAX_SEARCH_GROUND}, got {n}")));
    }
    let cands = candidates(n);
    let best = (0..cands.len())
        .into_par_iter()
        .map(|first| {
            let mut s = Search { cands: &cands, best: Vec::new() };
            s.extend(&mut vec![cands[first]], first + 1);
            (s.best, first)
        })
        // largest family; among equals the one with the earliest first member
        .reduce(
            || (Vec::new(), usize::MAX),
            |a, b| {
                if a.0.len() > b.0.len() || (a.0.len() == b.0.len() && a.1 < b.1) {
                    a
                } else {
                    b
                }
            },
        )
        .0;
    SetFamily::new(n, best)
}

pub fn max_family_size(n: u32) -> Result<usize> {
    Ok(max_family(n)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_pencil_on_four() {
        let f = SetFamily::from_sets(4, &[vec![2, 3, 4], vec![1, 2], vec![1, 3], vec![1, 4]]).unwrap();
        assert!(unique_intersection(&f));
        assert_eq!(near_pencil(4).unwrap(), f);
    }

    #[test]
    fn near_pencil_on_three() {
        assert_eq!(near_pencil(3).unwrap().sets(), vec![vec![2, 3], vec![1, 2], vec![1, 3]]);
        assert!(near_pencil(2).is_err());
        assert!(unique_intersection(&near_pencil(5).unwrap()));
    }

    #[test]
    fn non_examples() {
        let f = SetFamily::from_sets(3, &[vec![1, 2], vec![1, 2, 3]]).unwrap();
        assert!(!unique_intersection(&f));
        let f = SetFamily::from_sets(2, &[vec![1], vec![2]]).unwrap();
        assert!(!unique_intersection(&f));
    }

    #[test]
    fn rejects_bad_members() {
        assert!(SetFamily::new(3, vec![0]).is_err());
        assert!(SetFamily::new(3, vec![1, 1]).is_err());
        assert!(SetFamily::new(2, vec![4]).is_err());
        assert!(SetFamily::from_sets(3, &[vec![4]]).is_err());
    }

    #[test]
    fn small_maxima() {
        assert_eq!(max_family_size(2).unwrap(), 2);
        assert_eq!(max_family_size(3).unwrap(), 3);
        assert_eq!(max_family_size(4).unwrap(), 4);
        assert!(unique_intersection(&max_family(4).unwrap()));
    }

    #[test]
    fn candidate_order() {
        assert_eq!(candidates(3), vec![0b111, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100]);
    }

    #[test]
    fn vector_encoding_agrees() {
        for n in 3..=5 {
            let f = near_pencil(n).unwrap();
            assert_eq!(unique_positive_agreement(&f.vectors()), unique_intersection(&f));
        }
    }

    #[test]
    fn json_round_trip() {
        let f = near_pencil(3).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":3,"members":[[2,3],[1,2],[1,3]]}"#);
        assert_eq!(serde_json::from_str::<SetFamily>(&s).unwrap(), f);
        assert!(serde_json::from_str::<SetFamily>(r#"{"n":3,"members":[[1],[1]]}"#).is_err());
    }
}
