//! Conics through linear spaces by floor decomposition.
//!
//! Under a height-ordered, stretched configuration a tropical conic has
//! either one floor of degree 2 or two floors of degree 1.
//!
//! *One floor.* The floor meets `L_k` horizontally and the two unbounded
//! elevators meet the lower constraints split as `A ⊔ B = {1,…,k−1}`. The
//! projected problem is a conic one dimension down through
//! `[Σ_A(l−1), Σ_B(l−1), l_k−1, l_{k+1},…,l_γ]`. Each of those three spaces
//! that ends up a hyperplane is met by the projected conic in two points,
//! so the contribution is `2^m` times the projected count.
//!
//! *Two floors.* The lower floor meets `L_{k1}`, the upper one `L_{k2}`,
//! the bounded elevator meets `D ⊆ (k1, k2)`, the lower floor meets the
//! walls `C1` and the upper floor the walls `C2 ⊆ (k2, γ]`. The projection
//! is a reducible conic whose count is a product of two line counts.
//!
//! Indices in choices are 1-based positions in the normalized codim list.

use serde::{Deserialize, Serialize};

use crate::counter::Counter;
use crate::query::{countable_codims, validate_query, Degree, MemoKey, QueryError};
use crate::scalar::Count;

/// One floor of degree 2 meeting `floor_at` horizontally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneFloorChoice {
    pub floor_at: usize,
    /// Lower constraints met by the first unbounded elevator. Always holds
    /// index 1, so it is the lexicographically smaller set of the pair.
    pub elevator_a: Vec<usize>,
    pub elevator_b: Vec<usize>,
    /// Number of hyperplanes among the three projected spaces.
    pub hyperplanes: u32,
}

impl OneFloorChoice {
    /// Raw codims of the projected conic problem, before stripping
    /// hyperplanes.
    pub fn projected_codims(&self, codims: &[u32]) -> Vec<i64> {
        let mut out = vec![
            merged(codims, &self.elevator_a),
            merged(codims, &self.elevator_b),
            i64::from(codims[self.floor_at - 1]) - 1,
        ];
        out.extend(codims[self.floor_at..].iter().map(|&c| i64::from(c)));
        out
    }
}

/// Two floors of degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoFloorChoice {
    pub lower_floor_at: usize,
    pub upper_floor_at: usize,
    pub elevator_a: Vec<usize>,
    pub elevator_b: Vec<usize>,
    /// Constraints strictly between the floors met by the bounded elevator.
    pub bounded_elevator: Vec<usize>,
    /// Walls met by the lower floor.
    pub lower_walls: Vec<usize>,
    /// Walls met by the upper floor; all above `upper_floor_at`.
    pub upper_walls: Vec<usize>,
    /// Codims fed to the lower line count, node-side space last.
    pub line1_codims: Vec<i64>,
    /// Codims fed to the upper line count, node-side space last.
    pub line2_codims: Vec<i64>,
    /// Codim of the space the node is constrained to.
    pub node_codim: i64,
}

impl TwoFloorChoice {
    fn new(
        n: u32,
        codims: &[u32],
        (lower_floor_at, upper_floor_at): (usize, usize),
        (elevator_a, elevator_b): (Vec<usize>, Vec<usize>),
        bounded_elevator: Vec<usize>,
        lower_walls: Vec<usize>,
        upper_walls: Vec<usize>,
    ) -> Self {
        let at = |j: usize| i64::from(codims[j - 1]);
        let mut line1 = vec![
            merged(codims, &elevator_a),
            merged(codims, &elevator_b),
            at(lower_floor_at) - 1,
        ];
        line1.extend(lower_walls.iter().map(|&j| at(j)));
        let mut line2 = vec![at(upper_floor_at) - 1];
        line2.extend(upper_walls.iter().map(|&j| at(j)));
        // The lines through a generic configuration sweep out a variety of
        // dimension 2m − 1 − s in projective m-space; its degree is the line
        // count with one extra space of that codim.
        let m = i64::from(n) - 1;
        let close = |list: &mut Vec<i64>| {
            let s: i64 = list.iter().map(|c| c - 1).sum();
            list.push(2 * m - 1 - s);
        };
        let node_codim = merged(codims, &bounded_elevator);
        close(&mut line1);
        close(&mut line2);
        TwoFloorChoice {
            lower_floor_at,
            upper_floor_at,
            elevator_a,
            elevator_b,
            bounded_elevator,
            lower_walls,
            upper_walls,
            line1_codims: line1,
            line2_codims: line2,
            node_codim,
        }
    }

    /// Conditions on the reducible projected curve, excluding the two
    /// node-side closing spaces. Equals `3(n−1) − 2` for every valid choice.
    pub fn projected_conditions(&self) -> i64 {
        let s = |list: &[i64]| list[..list.len() - 1].iter().map(|c| c - 1).sum::<i64>();
        self.node_codim + s(&self.line1_codims) + s(&self.line2_codims)
    }
}

/// Totals of the two floor-decomposition families at the top level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicBreakdown<T> {
    pub one_floor: T,
    pub two_floor: T,
}

impl<T: Count> ConicBreakdown<T> {
    pub fn total(&self) -> T {
        self.one_floor.clone() + self.two_floor.clone()
    }
}

fn merged(codims: &[u32], set: &[usize]) -> i64 {
    set.iter().map(|&j| i64::from(codims[j - 1]) - 1).sum()
}

/// Unordered splits `{A, B}` of `indices` with both parts non-empty. `A`
/// always holds the first index.
pub(crate) fn unordered_splits(indices: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let Some((&first, rest)) = indices.split_first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for mask in 0u64..(1 << rest.len()) {
        let mut a = vec![first];
        let mut b = Vec::new();
        for (bit, &j) in rest.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.push(j);
            } else {
                b.push(j);
            }
        }
        if !b.is_empty() {
            out.push((a, b));
        }
    }
    out
}

/// Both parts of a two-way split of `indices`, driven by a bitmask.
fn split_by_mask(indices: &[usize], mask: u64) -> (Vec<usize>, Vec<usize>) {
    let mut on = Vec::new();
    let mut off = Vec::new();
    for (bit, &j) in indices.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            on.push(j);
        } else {
            off.push(j);
        }
    }
    (on, off)
}

/// Every one-floor choice for a countable conic query in dimension `n ≥ 3`.
/// Choices whose projected query vanishes are included.
pub fn enumerate_one_floor_choices(n: u32, codims: &[u32]) -> Vec<OneFloorChoice> {
    if n < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 3..=codims.len() {
        let lower: Vec<usize> = (1..k).collect();
        for (a, b) in unordered_splits(&lower) {
            let third = i64::from(codims[k - 1]) - 1;
            let hyperplanes = [merged(codims, &a), merged(codims, &b), third]
                .iter()
                .filter(|&&c| c == 1)
                .count() as u32;
            out.push(OneFloorChoice {
                floor_at: k,
                elevator_a: a,
                elevator_b: b,
                hyperplanes,
            });
        }
    }
    out
}

/// Every two-floor choice for a countable conic query in dimension `n ≥ 3`,
/// in canonical order. Choices whose line counts vanish are included.
pub fn enumerate_two_floor_choices(n: u32, codims: &[u32]) -> Vec<TwoFloorChoice> {
    let mut out = Vec::new();
    for_each_two_floor_choice(n, codims, |c| out.push(c));
    out
}

fn for_each_two_floor_choice(n: u32, codims: &[u32], mut visit: impl FnMut(TwoFloorChoice)) {
    if n < 3 {
        return;
    }
    let gamma = codims.len();
    let balance = 3 * (i64::from(n) - 1) - 2;
    for k1 in 3..=gamma {
        let lower: Vec<usize> = (1..k1).collect();
        let splits = unordered_splits(&lower);
        for k2 in k1 + 1..=gamma {
            let between: Vec<usize> = (k1 + 1..k2).collect();
            let above: Vec<usize> = (k2 + 1..=gamma).collect();
            for (a, b) in &splits {
                for dmask in 0u64..(1 << between.len()) {
                    let (bounded, walls_between) = split_by_mask(&between, dmask);
                    for cmask in 0u64..(1 << above.len()) {
                        let (upper_walls, walls_above) = split_by_mask(&above, cmask);
                        let mut lower_walls = walls_between.clone();
                        lower_walls.extend(walls_above);
                        let choice = TwoFloorChoice::new(
                            n,
                            codims,
                            (k1, k2),
                            (a.clone(), b.clone()),
                            bounded.clone(),
                            lower_walls,
                            upper_walls,
                        );
                        if choice.projected_conditions() == balance {
                            visit(choice);
                        }
                    }
                }
            }
        }
    }
}

impl<T: Count> Counter<T> {
    /// `N_{2,n}(codims)`. Zero-by-convention queries count 0.
    pub fn count_conics(&self, n: i64, codims: &[i64]) -> Result<T, QueryError> {
        let q = validate_query(2, n, codims)?;
        if !q.is_countable() {
            return Ok(T::zero());
        }
        Ok(self.conics_countable(q.ambient_dim(), q.codims()))
    }

    /// One-floor and two-floor subtotals of a conic count, evaluated in the
    /// given constraint order without consulting the memo at the top level.
    pub fn conic_breakdown(&self, n: i64, codims: &[i64]) -> Result<ConicBreakdown<T>, QueryError> {
        let q = validate_query(2, n, codims)?;
        if !q.is_countable() {
            return Ok(ConicBreakdown {
                one_floor: T::zero(),
                two_floor: T::zero(),
            });
        }
        Ok(self.expand_conics(q.ambient_dim(), q.codims()))
    }

    pub fn one_floor_contribution(&self, n: u32, codims: &[u32], choice: &OneFloorChoice) -> T {
        let projected = self.conics_raw(n - 1, &choice.projected_codims(codims));
        if projected.is_zero() {
            return projected;
        }
        T::pow2(choice.hyperplanes) * projected
    }

    pub fn two_floor_contribution(&self, n: u32, choice: &TwoFloorChoice) -> T {
        let first = self.lines_raw(n - 1, &choice.line1_codims);
        if first.is_zero() {
            return first;
        }
        first * self.lines_raw(n - 1, &choice.line2_codims)
    }

    pub(crate) fn conics_raw(&self, n: u32, raw: &[i64]) -> T {
        if n < 2 {
            return T::zero();
        }
        match countable_codims(Degree::Conic, n, raw) {
            Some(codims) => self.conics_countable(n, &codims),
            None => T::zero(),
        }
    }

    pub(crate) fn conics_countable(&self, n: u32, codims: &[u32]) -> T {
        if n == 2 {
            return T::one();
        }
        let key = MemoKey::new(Degree::Conic, n, codims);
        self.conics
            .get_or_compute(key, || self.expand_conics(n, codims).total())
    }

    fn expand_conics(&self, n: u32, codims: &[u32]) -> ConicBreakdown<T> {
        if n == 2 {
            return ConicBreakdown {
                one_floor: T::one(),
                two_floor: T::zero(),
            };
        }
        let one_floor = enumerate_one_floor_choices(n, codims)
            .iter()
            .fold(T::zero(), |acc, c| {
                acc + self.one_floor_contribution(n, codims, c)
            });
        let mut two_floor = T::zero();
        for_each_two_floor_choice(n, codims, |c| {
            two_floor = std::mem::take(&mut two_floor) + self.two_floor_contribution(n, &c);
        });
        ConicBreakdown {
            one_floor,
            two_floor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EIGHT_LINES: [u32; 8] = [2; 8];

    #[test]
    fn ninety_two_conics() {
        let c = Counter::<u64>::new();
        assert_eq!(c.count_conics(3, &[2; 8]).unwrap(), 92);
        let parts = c.conic_breakdown(3, &[2; 8]).unwrap();
        assert_eq!((parts.one_floor, parts.two_floor), (26, 66));
    }

    #[test]
    fn five_points_in_the_plane() {
        let c = Counter::<u64>::new();
        assert_eq!(c.count_conics(2, &[2; 5]).unwrap(), 1);
        assert_eq!(c.count_conics(2, &[2; 4]).unwrap(), 0);
        assert_eq!(c.count_conics(3, &[2; 7]).unwrap(), 0);
    }

    #[test]
    fn classical_space_conics() {
        // points and lines in projective 3-space
        let c = Counter::<u64>::new();
        assert_eq!(c.count_conics(3, &[3, 3, 3, 2, 2]).unwrap(), 1);
        assert_eq!(c.count_conics(3, &[3, 3, 2, 2, 2, 2]).unwrap(), 4);
        assert_eq!(c.count_conics(3, &[3, 2, 2, 2, 2, 2, 2]).unwrap(), 18);
        // three points span a plane that a generic line misses
        assert_eq!(c.count_conics(4, &[4, 4, 4, 3]).unwrap(), 0);
    }

    #[test]
    fn one_floor_choices_for_eight_lines() {
        let c = Counter::<u64>::new();
        let choices = enumerate_one_floor_choices(3, &EIGHT_LINES);
        assert!(choices
            .iter()
            .all(|ch| !ch.elevator_a.is_empty() && !ch.elevator_b.is_empty()));
        let nonzero: Vec<_> = choices
            .iter()
            .map(|ch| {
                (
                    ch.floor_at,
                    ch.hyperplanes,
                    c.one_floor_contribution(3, &EIGHT_LINES, ch),
                )
            })
            .filter(|t| t.2 != 0)
            .collect();
        assert_eq!(
            nonzero,
            vec![
                (3, 3, 8),
                (4, 2, 4),
                (4, 2, 4),
                (4, 2, 4),
                (5, 1, 2),
                (5, 1, 2),
                (5, 1, 2)
            ]
        );
    }

    #[test]
    fn two_floor_choices_for_eight_lines() {
        let c = Counter::<u64>::new();
        let choices = enumerate_two_floor_choices(3, &EIGHT_LINES);
        let values: Vec<u64> = choices
            .iter()
            .map(|ch| c.two_floor_contribution(3, ch))
            .collect();
        assert_eq!(values.iter().filter(|&&v| v != 0).count(), 66);
        assert!(values.iter().all(|&v| v <= 1));
        for (ch, v) in choices.iter().zip(&values) {
            if ch.upper_walls.is_empty() {
                assert_eq!(*v, 0, "{ch:?}");
            }
        }
    }

    #[test]
    fn two_floor_choices_partition_the_indices() {
        for ch in enumerate_two_floor_choices(3, &EIGHT_LINES) {
            let mut all: Vec<usize> = [ch.lower_floor_at, ch.upper_floor_at]
                .into_iter()
                .chain(ch.elevator_a.iter().copied())
                .chain(ch.elevator_b.iter().copied())
                .chain(ch.bounded_elevator.iter().copied())
                .chain(ch.lower_walls.iter().copied())
                .chain(ch.upper_walls.iter().copied())
                .collect();
            all.sort_unstable();
            assert_eq!(all, (1..=8).collect::<Vec<_>>());
            assert!(ch.upper_walls.iter().all(|&j| j > ch.upper_floor_at));
            assert!(ch
                .bounded_elevator
                .iter()
                .all(|&j| j > ch.lower_floor_at && j < ch.upper_floor_at));
            assert_eq!(ch.projected_conditions(), 4);
        }
    }

    #[test]
    fn plane_has_no_choices() {
        assert!(enumerate_one_floor_choices(2, &[2; 5]).is_empty());
        assert!(enumerate_two_floor_choices(2, &[2; 5]).is_empty());
    }

    #[test]
    fn unordered_splits_are_halved() {
        let splits = unordered_splits(&[1, 2, 3, 4]);
        assert_eq!(splits.len(), 7);
        assert!(splits.iter().all(|(a, b)| a[0] == 1 && !b.is_empty()));
        assert!(unordered_splits(&[1]).is_empty());
    }
}
