use std::collections::BTreeSet;

use super::{Algebra, AlgebraError, AlgebraHom};
use crate::linalg::{Rational, SparseMatrix};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates the Latin-square property, the identity and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, AlgebraError> {
        let n = table.len();
        let labels = (0..n).map(|g| format!("g{g}")).collect();
        Self::with_labels(table, identity, labels)
    }

    pub fn with_labels(table: Vec<Vec<usize>>, identity: usize, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = table.len();
        let bad = |m: String| Err(AlgebraError::InvalidGroup(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if labels.len() != n {
            return bad("label count differs from order".into());
        }
        if identity >= n {
            return bad(format!("identity index {identity} out of range"));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {g} has length {}", row.len()));
            }
            let seen: BTreeSet<usize> = row.iter().copied().collect();
            if seen.len() != n || row.iter().any(|&x| x >= n) {
                return bad(format!("row {g} is not a permutation"));
            }
        }
        for h in 0..n {
            let seen: BTreeSet<usize> = (0..n).map(|g| table[g][h]).collect();
            if seen.len() != n {
                return bad(format!("column {h} is not a permutation"));
            }
        }
        for g in 0..n {
            if table[identity][g] != g || table[g][identity] != g {
                return bad(format!("index {identity} does not act as identity on {g}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, labels })
    }

    /// Z/n with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|k| format!("{k}")).collect();
        FiniteGroup { table, identity: 0, labels }
    }

    /// S_n as permutations of `0..n` in lexicographic order (identity first),
    /// composed as `(s*t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect())).collect())
            .collect();
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        FiniteGroup { table, identity: 0, labels }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("Latin square")
    }

    /// Index of the element with the given label.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![self.identity])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.order()).collect())
    }

    /// Validates a subset as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, AlgebraError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&g) = set.iter().find(|&&g| g >= self.order()) {
            return Err(AlgebraError::NotASubgroup(format!("element {g} out of range")));
        }
        if !set.contains(&self.identity) {
            return Err(AlgebraError::NotASubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&self.inverse(a)) {
                return Err(AlgebraError::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(AlgebraError::NotASubgroup(format!("not closed: {a}*{b}")));
                }
            }
        }
        Ok(Subgroup(set.into_iter().collect()))
    }

    /// Double cosets `K g K`, each sorted, ordered by least element.
    pub fn double_cosets(&self, k: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset = BTreeSet::new();
            for &a in k.elements() {
                for &b in k.elements() {
                    coset.insert(self.mul(self.mul(a, g), b));
                }
            }
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset.into_iter().collect());
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A validated subgroup, as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|g| other.0.binary_search(g).is_ok())
    }
}

/// `Q[G]` with basis the group elements in table order.
pub fn group_algebra(g: &FiniteGroup) -> Algebra {
    let n = g.order();
    let table = (0..n).map(|a| (0..n).map(|b| vec![(g.mul(a, b), Rational::ONE)]).collect()).collect();
    let mut unit = vec![Rational::ZERO; n];
    unit[g.identity] = Rational::ONE;
    Algebra::new(g.labels.clone(), table, Some(unit)).expect("group algebra is well formed")
}

/// The Hecke algebra `e_K Q[G] e_K` together with its inclusion into `Q[G]`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    pub algebra: Algebra,
    pub inclusion: AlgebraHom,
    pub double_cosets: Vec<Vec<usize>>,
}

/// K-bi-invariant functions on `G` under convolution. The basis element for
/// a double coset `D` is `1_D / |K|`, so the identity coset gives the unit
/// `e_K` and the inclusion into `Q[G]` is a (non-unital) homomorphism.
pub fn hecke_algebra(g: &FiniteGroup, k: &Subgroup) -> Result<HeckeAlgebra, AlgebraError> {
    let k = g.subgroup(k.elements())?;
    let cosets = g.double_cosets(&k);
    let m = cosets.len();
    let korder = Rational::from(k.order() as i64);
    let mut which = vec![0usize; g.order()];
    for (c, d) in cosets.iter().enumerate() {
        for &x in d {
            which[x] = c;
        }
    }
    let inv: Vec<usize> = (0..g.order()).map(|y| g.inverse(y)).collect();
    // (1_D/|K|)(1_E/|K|) evaluated at a representative x of F, times |K|,
    // is the coefficient of 1_F/|K|.
    let mut table = vec![vec![Vec::new(); m]; m];
    for (di, d) in cosets.iter().enumerate() {
        for ei in 0..m {
            let mut entry = Vec::new();
            for (fi, f) in cosets.iter().enumerate() {
                let x = f[0];
                let count = d.iter().filter(|&&y| which[g.mul(inv[y], x)] == ei).count();
                if count > 0 {
                    entry.push((fi, Rational::new(count as i64, 1) / &korder));
                }
            }
            table[di][ei] = entry;
        }
    }
    let labels = cosets
        .iter()
        .map(|d| if d.len() == 1 { g.labels[d[0]].clone() } else { format!("K{}K", g.labels[d[0]]) })
        .collect();
    let mut unit = vec![Rational::ZERO; m];
    unit[which[g.identity]] = Rational::ONE;
    let algebra = Algebra::new(labels, table, Some(unit))?;
    let inv_k = korder.recip();
    let emb = SparseMatrix::from_columns(
        g.order(),
        cosets.iter().map(|d| d.iter().map(|&x| (x, inv_k.clone())).collect()).collect(),
    );
    let inclusion = AlgebraHom::new(algebra.clone(), group_algebra(g), emb)?;
    Ok(HeckeAlgebra { algebra, inclusion, double_cosets: cosets })
}

/// For `K' ⊆ K`, the inclusion `hecke(G, K) -> hecke(G, K')` of subalgebras of
/// `Q[G]`: `1_D/|K| = sum_{D' ⊆ D} (|K'|/|K|) 1_{D'}/|K'|`.
pub fn hecke_inclusion(
    g: &FiniteGroup,
    big: &Subgroup,
    small: &Subgroup,
) -> Result<(HeckeAlgebra, HeckeAlgebra, AlgebraHom), AlgebraError> {
    if !small.is_subset_of(big) {
        return Err(AlgebraError::NotASubgroup("smaller subgroup is not contained in the larger".into()));
    }
    let hb = hecke_algebra(g, big)?;
    let hs = hecke_algebra(g, small)?;
    let ratio = Rational::new(small.order() as i64, big.order() as i64);
    let mut owner = vec![0usize; g.order()];
    for (c, d) in hs.double_cosets.iter().enumerate() {
        for &x in d {
            owner[x] = c;
        }
    }
    let cols = hb
        .double_cosets
        .iter()
        .map(|d| {
            let parts: BTreeSet<usize> = d.iter().map(|&x| owner[x]).collect();
            parts.into_iter().map(|c| (c, ratio.clone())).collect()
        })
        .collect();
    let m = SparseMatrix::from_columns(hs.algebra.dim(), cols);
    let f = AlgebraHom::new(hb.algebra.clone(), hs.algebra.clone(), m)?;
    Ok((hb, hs, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_associativity;

    fn s2_in_s3(g: &FiniteGroup) -> Subgroup {
        let t = g.find("[1 0 2]").unwrap();
        g.subgroup(&[g.identity(), t]).unwrap()
    }

    #[test]
    fn groups_validate() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(FiniteGroup::from_table(s3.table().to_vec(), 0).is_ok());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], 0).is_err());
        assert!(s3.subgroup(&[0, 1, 2]).is_err());
    }

    #[test]
    fn group_algebra_examples() {
        let g1 = group_algebra(&FiniteGroup::cyclic(1));
        assert_eq!(g1.table(), Algebra::ground_field().table());
        let z2 = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(z2.product(1, 1), &[(0, Rational::ONE)]);
        let s3 = group_algebra(&FiniteGroup::symmetric(3));
        assert_eq!(s3.dim(), 6);
        assert_eq!(check_associativity(&s3), None);
        assert!(!s3.is_commutative());
    }

    #[test]
    fn hecke_examples() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(hecke_algebra(&g, &g.whole()).unwrap().algebra.dim(), 1);
        let triv = hecke_algebra(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(triv.algebra.table(), group_algebra(&g).table());
        assert_eq!(triv.algebra.unit(), group_algebra(&g).unit());
        let h = hecke_algebra(&g, &s2_in_s3(&g)).unwrap();
        assert_eq!(h.algebra.dim(), 2);
        let sizes: Vec<usize> = h.double_cosets.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(check_associativity(&h.algebra), None);
        assert!(h.algebra.is_commutative());
        assert!(h.inclusion.is_injective());
        assert!(h.inclusion.multiplicativity_failure().is_none());
        // e_K is not the unit of Q[S3]
        let image_of_unit = h.inclusion.apply(h.algebra.unit().unwrap());
        assert_ne!(image_of_unit.as_slice(), group_algebra(&g).unit().unwrap());
        assert!(hecke_algebra(&g, &Subgroup(vec![0, 1, 2])).is_err());
    }

    #[test]
    fn hecke_inclusions_compose() {
        let g = FiniteGroup::symmetric(3);
        let k = s2_in_s3(&g);
        let (_, _, top) = hecke_inclusion(&g, &g.whole(), &k).unwrap();
        let (_, _, bottom) = hecke_inclusion(&g, &k, &g.trivial_subgroup()).unwrap();
        let (_, _, direct) = hecke_inclusion(&g, &g.whole(), &g.trivial_subgroup()).unwrap();
        let composite = top.then(&bottom).unwrap();
        assert_eq!(composite.matrix(), direct.matrix());
        let hw = hecke_algebra(&g, &g.whole()).unwrap();
        assert_eq!(direct.matrix(), hw.inclusion.matrix());
    }
}
