//! Explicit finite groups stored as Cayley tables.
//!
//! Elements are dense indices `0..n`. Every constructor validates the
//! group axioms on the finished table, including a full associativity
//! scan, so a `Group` value is always a group.

use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::Subgroup;

/// Largest order any constructor will build. Associativity is checked on
/// all `n^3` triples, which stays cheap up to this bound.
pub const MAX_CONSTRUCTION_ORDER: usize = 512;

#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    label: String,
    order: usize,
    identity: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementInfo {
    pub index: usize,
    pub order: usize,
    pub inverse: usize,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_CONSTRUCTION_ORDER {
        return Err(Error::capacity("group order", MAX_CONSTRUCTION_ORDER, n));
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    let mut result = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

impl Group {
    /// Builds a group from a product function on `0..n`, then validates it.
    fn from_fn(
        label: String,
        n: usize,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Group> {
        check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        Self::validated(label, n, table)
    }

    /// Builds a group from an explicit Cayley table, `rows[i][j] = i·j`.
    /// The identity is located automatically.
    pub fn from_table(label: impl Into<String>, rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::validated(label.into(), n, table)
    }

    fn validated(label: String, n: usize, table: Vec<usize>) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if let Some(pos) = table.iter().position(|&x| x >= n) {
            return Err(Error::InvalidTable(format!(
                "entry ({}, {}) = {} out of range",
                pos / n,
                pos % n,
                table[pos]
            )));
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| at(e, j) == j && at(j, e) == j))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;

        let mut inverses = vec![usize::MAX; n];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&j| at(i, j) == identity && at(j, i) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {i} has no inverse")))?;
        }

        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        let mut orders = vec![0; n];
        for (i, ord) in orders.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != identity {
                x = at(x, i);
                k += 1;
            }
            *ord = k;
        }

        Ok(Group {
            label,
            order: n,
            identity,
            table,
            inverses,
            orders,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `a^k` for `k >= 0`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut x = self.identity;
        for _ in 0..k % self.orders[a] {
            x = self.mul(x, a);
        }
        x
    }

    /// `g · x · g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> Result<usize> {
        self.orders.get(i).copied().ok_or_else(|| {
            Error::param(format!("element {i} out of range for order {}", self.order))
        })
    }

    /// Order of element `i`, which must be in range.
    #[inline]
    pub(crate) fn order_of(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn element_info(&self, i: usize) -> Result<ElementInfo> {
        Ok(ElementInfo {
            index: i,
            order: self.element_order(i)?,
            inverse: self.inverses[i],
        })
    }

    /// True when `gSg⁻¹ = S` for every `g`.
    pub fn is_normal(&self, members: &ElementSet) -> bool {
        self.elements().all(|g| {
            members
                .iter()
                .all(|x| members.contains(self.conjugate(g, x)))
        })
    }

    /// The subgroup `members` as a standalone group, together with the map
    /// from its element indices back to indices of `self`.
    pub fn induced(&self, members: &ElementSet) -> Result<(Group, Vec<usize>)> {
        let embed: Vec<usize> = members.iter().collect();
        let mut local = vec![usize::MAX; self.order];
        for (li, &gi) in embed.iter().enumerate() {
            local[gi] = li;
        }
        let label = format!("{}[{}]", self.label, embed.len());
        let mut bad = None;
        let g = Group::from_fn(label, embed.len(), |a, b| {
            let p = local[self.mul(embed[a], embed[b])];
            if p == usize::MAX {
                bad = Some((embed[a], embed[b]));
                0
            } else {
                p
            }
        });
        if let Some((a, b)) = bad {
            return Err(Error::param(format!("set is not closed: {a}·{b} escapes")));
        }
        Ok((g?, embed))
    }
}

/// Cyclic group of order `n`; element `k` is the `k`-th power of the
/// generator 1.
pub fn make_cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::param("cyclic group order must be at least 1"));
    }
    Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of order `two_n`. Index `i + n·j` stands for `r^i s^j`.
pub fn make_dihedral(two_n: usize) -> Result<Group> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "dihedral order must be positive and even, got {two_n}"
        )));
    }
    let n = two_n / 2;
    Group::from_fn(format!("D{two_n}"), two_n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })
}

/// Canonical label for the dicyclic group of order `4n`.
pub fn dicyclic_label(n: usize) -> String {
    if (4 * n).is_power_of_two() {
        format!("Q{}", 4 * n)
    } else {
        format!("Dic{n}")
    }
}

/// Dicyclic group `<a, b | a^2n = 1, b^2 = a^n, bab⁻¹ = a⁻¹>` of order
/// `4n`. Index `i + 2n·j` stands for `a^i b^j`.
pub fn make_dicyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::param("dicyclic parameter must be at least 1"));
    }
    let m = 2 * n;
    Group::from_fn(dicyclic_label(n), 2 * m, |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (_, 0) => (i + m - k) % m + m,
            _ => (i + m - k + n) % m,
        }
    })
}

/// Direct product with pair `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng
        .checked_mul(nh)
        .ok_or_else(|| Error::capacity("group order", MAX_CONSTRUCTION_ORDER, usize::MAX))?;
    check_order(n)?;
    Group::from_fn(format!("{}x{}", g.label(), h.label()), n, |a, b| {
        g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh)
    })
}

/// `C_m ⋊ C_n` with `b a b⁻¹ = a^t`. The pair `(i, j)` standing for
/// `a^i b^j` sits at index `i·n + j`, matching [`semidirect_general`].
pub fn semidirect_cyclic(m: usize, n: usize, t: usize) -> Result<Group> {
    if m == 0 || n == 0 {
        return Err(Error::param(
            "semidirect factors must have order at least 1",
        ));
    }
    if gcd(t % m, m) != 1 {
        return Err(Error::action(format!("gcd({t}, {m}) != 1")));
    }
    if pow_mod(t, n, m) != 1 % m {
        return Err(Error::action(format!("{t}^{n} is not 1 mod {m}")));
    }
    check_order(m * n)?;
    let twist: Vec<usize> = (0..n).map(|j| pow_mod(t, j, m)).collect();
    Group::from_fn(format!("SDP({m},{n},{t})"), m * n, |x, y| {
        let (i, j) = (x / n, x % n);
        let (k, l) = (y / n, y % n);
        ((i + twist[j] * k) % m) * n + (j + l) % n
    })
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` induced by `h`,
/// given as a permutation of `N`'s indices. Pairs `(x, h)` sit at index
/// `x·|H| + h`, so the trivial action reproduces [`direct_product`].
pub fn semidirect_general(normal: &Group, acting: &Group, action: &[Vec<usize>]) -> Result<Group> {
    let (nn, nh) = (normal.order(), acting.order());
    if action.len() != nh {
        return Err(Error::action(format!(
            "action has {} entries, acting group has order {nh}",
            action.len()
        )));
    }
    for (h, perm) in action.iter().enumerate() {
        if perm.len() != nn {
            return Err(Error::action(format!("action[{h}] has wrong length")));
        }
        let mut seen = vec![false; nn];
        for &x in perm {
            if x >= nn || std::mem::replace(&mut seen[x], true) {
                return Err(Error::action(format!("action[{h}] is not a permutation")));
            }
        }
        for x in 0..nn {
            for y in 0..nn {
                if perm[normal.mul(x, y)] != normal.mul(perm[x], perm[y]) {
                    return Err(Error::action(format!(
                        "action[{h}] is not an automorphism: fails at ({x}, {y})"
                    )));
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let composed = &action[acting.mul(h1, h2)];
            if (0..nn).any(|x| composed[x] != action[h1][action[h2][x]]) {
                return Err(Error::action(format!(
                    "action is not a homomorphism at ({h1}, {h2})"
                )));
            }
        }
    }
    let n = nn * nh;
    check_order(n)?;
    Group::from_fn(
        format!("{}:{}", normal.label(), acting.label()),
        n,
        |a, b| {
            let (x, h) = (a / nh, a % nh);
            let (y, k) = (b / nh, b % nh);
            normal.mul(x, action[h][y]) * nh + acting.mul(h, k)
        },
    )
}

/// `G / N` on the cosets of a normal subgroup. Cosets are ordered by their
/// minimal element index, which is also the representative.
pub fn quotient(g: &Group, normal: &Subgroup) -> Result<Group> {
    let members = normal.members();
    if members.universe() != g.order() {
        return Err(Error::param("subgroup belongs to a different group"));
    }
    if !g.is_normal(members) {
        return Err(Error::NotNormal(format!(
            "subgroup of order {} in {}",
            members.len(),
            g.label()
        )));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for n in members.iter() {
            coset_of[g.mul(x, n)] = id;
        }
    }
    let label = format!("{}/{}", g.label(), members.len());
    Group::from_fn(label, reps.len(), |a, b| coset_of[g.mul(reps[a], reps[b])])
}
