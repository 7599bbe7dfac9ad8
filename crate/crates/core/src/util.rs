/// Advances a little-endian-last odometer over `0..base` digits. Returns
/// false once every combination has been visited.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Like [`advance`] with a separate base per digit.
pub(crate) fn advance_mixed(digits: &mut [usize], bases: &[usize]) -> bool {
    for (d, &b) in digits.iter_mut().zip(bases).rev() {
        *d += 1;
        if *d < b {
            return true;
        }
        *d = 0;
    }
    false
}

/// Disjoint-set forest with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so classes are keyed by their least member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes as sorted member lists, ordered by least member.
    pub(crate) fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}
