//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing).

use serde::Serialize;

use super::presentation::{GroupPresentation, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "order", rename_all = "snake_case")]
pub enum CosetResult {
    Order(usize),
    ExceededBound,
}

const NONE: usize = usize::MAX;

struct Table {
    cols: usize,
    rows: Vec<Vec<usize>>,
    /// Forwarding pointers; `forward[c] == c` for live cosets.
    forward: Vec<usize>,
    live: usize,
    queue: Vec<(usize, usize)>,
}

fn col(l: Letter) -> usize {
    2 * l.generator + usize::from(l.inverse)
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Table {
    fn new(cols: usize) -> Self {
        Table {
            cols,
            rows: vec![vec![NONE; cols]],
            forward: vec![0],
            live: 1,
            queue: Vec::new(),
        }
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        while self.forward[c] != root {
            let next = self.forward[c];
            self.forward[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> usize {
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.forward.push(n);
        self.live += 1;
        self.rows[c][x] = n;
        self.rows[n][inv_col(x)] = c;
        n
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, lose) = if a < b { (a, b) } else { (b, a) };
        self.forward[lose] = keep;
        self.live -= 1;
        self.queue.push((lose, keep));
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let (lose, _) = self.queue[head];
            head += 1;
            for x in 0..self.cols {
                let delta = self.rows[lose][x];
                if delta == NONE {
                    continue;
                }
                if self.rows[delta][inv_col(x)] == lose {
                    self.rows[delta][inv_col(x)] = NONE;
                }
                let mu = self.rep(lose);
                let nu = self.rep(delta);
                if self.rows[mu][x] != NONE {
                    let m = self.rows[mu][x];
                    self.merge(nu, m);
                } else if self.rows[nu][inv_col(x)] != NONE {
                    let n = self.rows[nu][inv_col(x)];
                    self.merge(mu, n);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][inv_col(x)] = mu;
                }
            }
        }
        self.queue.clear();
    }

    /// Scans relator `r` from coset `c`, defining cosets as needed.
    fn scan_and_fill(&mut self, c: usize, r: &[usize], bound: usize) -> bool {
        let n = r.len();
        let mut f = c;
        let mut b = c;
        let mut i = 0;
        let mut j = n;
        loop {
            while i < j && self.rows[f][r[i]] != NONE {
                f = self.rows[f][r[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.rows[b][inv_col(r[j - 1])] != NONE {
                b = self.rows[b][inv_col(r[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                // Deduction: f -r[i]-> b.
                self.rows[f][r[i]] = b;
                self.rows[b][inv_col(r[i])] = f;
                return true;
            }
            if self.live >= bound || self.rows.len() >= bound.saturating_mul(64) {
                return false;
            }
            self.define(f, r[i]);
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. Stops with
/// `ExceededBound` once more than `max_cosets` cosets are alive.
pub fn coset_enumeration(p: &GroupPresentation, max_cosets: usize) -> CosetResult {
    let p = p.simplified();
    let cols = 2 * p.generators.len();
    if cols == 0 {
        return CosetResult::Order(1);
    }
    let rels: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&l| col(l)).collect()).collect();
    let mut t = Table::new(cols);
    let mut c = 0;
    while c < t.rows.len() {
        if t.is_live(c) {
            for r in &rels {
                if !t.is_live(c) {
                    break;
                }
                if !t.scan_and_fill(c, r, max_cosets) {
                    return CosetResult::ExceededBound;
                }
            }
            if t.is_live(c) {
                for x in 0..cols {
                    if t.rows[c][x] == NONE {
                        if t.live >= max_cosets {
                            return CosetResult::ExceededBound;
                        }
                        t.define(c, x);
                    }
                }
            }
        }
        c += 1;
    }
    CosetResult::Order(t.live)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, rels: &[&[(usize, bool)]]) -> GroupPresentation {
        GroupPresentation::new(
            (0..gens).map(|g| format!("g{g}")).collect(),
            rels.iter().map(|r| r.iter().map(|&(g, i)| Letter::new(g, i)).collect()).collect(),
        )
    }

    #[test]
    fn cyclic_groups() {
        let z5 = pres(1, &[&[(0, false); 5]]);
        assert_eq!(coset_enumeration(&z5, 100), CosetResult::Order(5));
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^3, (ab)^2>
        let p = pres(
            2,
            &[
                &[(0, false), (0, false)],
                &[(1, false); 3],
                &[(0, false), (1, false), (0, false), (1, false)],
            ],
        );
        assert_eq!(coset_enumeration(&p, 1000), CosetResult::Order(6));
    }

    #[test]
    fn quaternion_group() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a>
        let p = pres(
            2,
            &[
                &[(0, false); 4],
                &[(0, false), (0, false), (1, true), (1, true)],
                &[(1, true), (0, false), (1, false), (0, false)],
            ],
        );
        assert_eq!(coset_enumeration(&p, 1000), CosetResult::Order(8));
    }

    #[test]
    fn free_group_exceeds() {
        let p = pres(1, &[]);
        assert_eq!(coset_enumeration(&p, 50), CosetResult::ExceededBound);
    }

    #[test]
    fn trivial_group() {
        // <a, b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial.
        let p = pres(
            2,
            &[
                &[(0, false), (1, false), (0, true), (1, true), (1, true)],
                &[(1, false), (0, false), (1, true), (0, true), (0, true)],
            ],
        );
        assert_eq!(coset_enumeration(&p, 1000), CosetResult::Order(1));
    }
}
