/// Disjoint sets over `0..len` with path halving and union by rank.
#[derive(Debug, Default)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    /// Adds a singleton set and returns its element.
    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.rank.push(0);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; false if they were already one set.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_is_transitive() {
        let mut uf = UnionFind::default();
        let ids: Vec<_> = (0..5).map(|_| uf.push()).collect();
        assert!(uf.union(ids[0], ids[1]));
        assert!(uf.union(ids[1], ids[2]));
        assert!(!uf.union(ids[0], ids[2]));
        assert_eq!(uf.find(ids[0]), uf.find(ids[2]));
        assert_ne!(uf.find(ids[0]), uf.find(ids[3]));
        assert!(uf.union(ids[4], ids[3]));
        assert!(uf.union(ids[3], ids[0]));
        let root = uf.find(ids[0]);
        assert!(ids.iter().all(|&i| uf.find(i) == root));
    }
}
