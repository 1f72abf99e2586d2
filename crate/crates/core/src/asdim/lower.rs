use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, unsupported};
use crate::spaces::{box_points, IntBox, Space};
use crate::{int, Error, Point, Result};

/// Largest region handled by the one-dimensional sweep.
pub const LINE_CAP: usize = 500;
/// Largest region handled by the general branch and bound.
pub const BRANCH_CAP: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBound {
    /// No cover of the region by sets of diameter at most `m` with
    /// multiplicity at most `n` contains every closed `r`-ball inside it.
    Infeasible {
        nodes: u64,
    },
    Feasible {
        cover: Vec<BTreeSet<Point>>,
        nodes: u64,
    },
    Budget {
        nodes: u64,
    },
}

/// Searches for an `m`-bounded cover of the finite lattice box `region`
/// with multiplicity at most `n` in which every closed `r`-ball contained
/// in the region lies inside one member.
///
/// Any such cover can be shrunk to one whose members are unions of those
/// balls plus singletons for points in no ball, so the search assigns each
/// ball to one member. On the line the assignment is a left to right sweep
/// with memoised failures; elsewhere a branch and bound over at most
/// [`BRANCH_CAP`] points.
pub fn lower_bound_search(space: &Space, region: &IntBox, m: i64, r: i64, n: usize, budget: u64) -> Result<LowerBound> {
    let Some(l) = space.as_lattice() else {
        return Err(unsupported("the cover search runs on lattices"));
    };
    if region.axes.len() != l.dim || !region.is_bounded() {
        return Err(invalid("the region must be a bounded box of the lattice's dimension"));
    }
    if m < 0 || r < 0 || n == 0 {
        return Err(invalid("need m >= 0, r >= 0 and n >= 1"));
    }
    let pts = if region.is_empty() { Vec::new() } else { box_points(region) };
    if l.dim == 1 {
        if pts.len() > LINE_CAP {
            return Err(Error::CapExceeded { size: pts.len(), cap: LINE_CAP });
        }
        let (a, b) = (region.axes[0].0.unwrap(), region.axes[0].1.unwrap());
        return Ok(Sweep::new(a, b, m, r, n, budget).run());
    }
    if pts.len() > BRANCH_CAP {
        return Err(Error::CapExceeded { size: pts.len(), cap: BRANCH_CAP });
    }
    Ok(Branch::new(space, pts, m, r, n, budget).run())
}

/// Independent check of a cover found by [`lower_bound_search`].
pub fn validate_cover(
    space: &Space,
    region: &IntBox,
    cover: &[BTreeSet<Point>],
    m: i64,
    r: i64,
    n: usize,
) -> Result<()> {
    let fail = |check: String| Error::CertificateFailed { scale: int(r), check };
    let pts = if region.is_empty() { Vec::new() } else { box_points(region) };
    let mut count: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, member) in cover.iter().enumerate() {
        for p in member {
            if !region.contains(p) {
                return Err(fail(format!("member {i} leaves the region at {p}")));
            }
            *count.entry(p).or_default() += 1;
            for q in member {
                if space.dist(p, q).gt(&int(m)) {
                    return Err(fail(format!("member {i} has {p} and {q} farther apart than {m}")));
                }
            }
        }
    }
    for p in &pts {
        match count.get(p) {
            None => return Err(fail(format!("{p} is uncovered"))),
            Some(&k) if k > n => return Err(fail(format!("{p} lies in {k} members"))),
            _ => {}
        }
    }
    let nb = space.neighborhood(&int(r), true);
    for c in &pts {
        let ball: Vec<Point> = nb.around(space, c).into_iter().map(|(q, _)| q).collect();
        if ball.iter().all(|q| region.contains(q)) && !cover.iter().any(|u| ball.iter().all(|q| u.contains(q))) {
            return Err(fail(format!("the closed {r}-ball around {c} lies in no member")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Group {
    id: usize,
    first: i64,
    /// Bit `i` set when centre `c - i` belongs to the group, `c` being the
    /// last centre placed.
    recent: u64,
}

/// Centres `a+r ..= b-r` placed left to right. After centre `c` the point
/// `c - r` sees exactly the centres `c-2r ..= c`, so its multiplicity is
/// final.
struct Sweep {
    a: i64,
    b: i64,
    r: i64,
    span: i64,
    n: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    failed: BTreeSet<(i64, Vec<(i64, u64)>)>,
    assign: Vec<usize>,
}

impl Sweep {
    fn new(a: i64, b: i64, m: i64, r: i64, n: usize, budget: u64) -> Self {
        Sweep {
            a,
            b,
            r,
            span: m - 2 * r,
            n,
            budget,
            nodes: 0,
            exhausted: false,
            failed: BTreeSet::new(),
            assign: Vec::new(),
        }
    }

    fn run(mut self) -> LowerBound {
        let (lo, hi) = (self.a + self.r, self.b - self.r);
        if lo > hi {
            let cover = (self.a..=self.b).map(|x| BTreeSet::from([Point::scalar(x)])).collect();
            return LowerBound::Feasible { cover, nodes: 0 };
        }
        if self.span < 0 {
            return LowerBound::Infeasible { nodes: 0 };
        }
        let ok = self.place(lo, &[], 0);
        if self.exhausted {
            return LowerBound::Budget { nodes: self.nodes };
        }
        if !ok {
            return LowerBound::Infeasible { nodes: self.nodes };
        }
        let mut members: BTreeMap<usize, BTreeSet<Point>> = BTreeMap::new();
        for (k, id) in self.assign.iter().enumerate() {
            let c = lo + k as i64;
            members.entry(*id).or_default().extend((c - self.r..=c + self.r).map(Point::scalar));
        }
        LowerBound::Feasible { cover: members.into_values().collect(), nodes: self.nodes }
    }

    fn key(&self, c: i64, groups: &[Group]) -> Vec<(i64, u64)> {
        let mut k: Vec<(i64, u64)> = groups.iter().map(|g| ((c - g.first).min(self.span + 1), g.recent)).collect();
        k.sort_unstable();
        k
    }

    fn place(&mut self, c: i64, groups: &[Group], next_id: usize) -> bool {
        let hi = self.b - self.r;
        if c > hi {
            return self.tail_ok(groups);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let key = (c, self.key(c, groups));
        if self.failed.contains(&key) {
            return false;
        }
        let width = 2 * self.r + 1;
        let keep = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
        // choices: an open group (one per distinct state) or a new one
        let mut tried: BTreeSet<(i64, u64)> = BTreeSet::new();
        let mut choices: Vec<Option<usize>> = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            if c - g.first <= self.span && tried.insert((g.first, g.recent)) {
                choices.push(Some(i));
            }
        }
        choices.push(None);
        for choice in choices {
            let mut next: Vec<Group> = groups
                .iter()
                .enumerate()
                .map(|(i, g)| Group {
                    id: g.id,
                    first: g.first,
                    recent: (g.recent << 1 | (choice == Some(i)) as u64) & keep,
                })
                .collect();
            let id = match choice {
                Some(i) => groups[i].id,
                None => {
                    next.push(Group { id: next_id, first: c, recent: 1 });
                    next_id
                }
            };
            if next.iter().filter(|g| g.recent != 0).count() > self.n {
                continue;
            }
            // drop groups that can neither grow nor reach a later point
            let future = keep >> 1;
            next.retain(|g| c - g.first < self.span || g.recent & future != 0);
            self.assign.push(id);
            if self.place(c + 1, &next, next_id + choice.is_none() as usize) {
                return true;
            }
            self.assign.pop();
            if self.exhausted {
                return false;
            }
        }
        self.failed.insert(key);
        false
    }

    /// The last `2r` points see only centres up to `b - r`.
    fn tail_ok(&self, groups: &[Group]) -> bool {
        for x in self.b - 2 * self.r + 1..=self.b {
            if x < self.a {
                continue;
            }
            let bits = self.b - x + 1;
            let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
            if groups.iter().filter(|g| g.recent & mask != 0).count() > self.n {
                return false;
            }
        }
        true
    }
}

struct Branch {
    pts: Vec<Point>,
    dist: Vec<Vec<i64>>,
    balls: Vec<u64>,
    loose: u64,
    m: i64,
    n: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Branch {
    fn new(space: &Space, pts: Vec<Point>, m: i64, r: i64, n: usize, budget: u64) -> Self {
        let k = pts.len();
        let dist: Vec<Vec<i64>> = pts
            .iter()
            .map(|p| pts.iter().map(|q| space.dist(p, q).finite().map_or(i64::MAX, |d| d.to_integer())).collect())
            .collect();
        let full = space.neighborhood(&int(r), true).around(space, &space.basepoint()).len();
        let mut balls = Vec::new();
        let mut covered = 0u64;
        for row in &dist {
            let mask = (0..k).filter(|&j| row[j] <= r).fold(0u64, |acc, j| acc | 1 << j);
            if mask.count_ones() as usize == full {
                balls.push(mask);
                covered |= mask;
            }
        }
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Branch { pts, dist, balls, loose: all & !covered, m, n, budget, nodes: 0, exhausted: false }
    }

    fn run(mut self) -> LowerBound {
        let mut groups = Vec::new();
        let mut count = alloc::vec![0usize; self.pts.len()];
        let ok = self.ball_diameter_ok() && self.assign(0, &mut groups, &mut count);
        if self.exhausted {
            return LowerBound::Budget { nodes: self.nodes };
        }
        if !ok {
            return LowerBound::Infeasible { nodes: self.nodes };
        }
        let set = |mask: u64| -> BTreeSet<Point> {
            (0..self.pts.len()).filter(|j| mask >> j & 1 == 1).map(|j| self.pts[j].clone()).collect()
        };
        let mut cover: Vec<BTreeSet<Point>> = groups.iter().map(|&g| set(g)).collect();
        cover.extend((0..self.pts.len()).filter(|j| self.loose >> j & 1 == 1).map(|j| set(1 << j)));
        LowerBound::Feasible { cover, nodes: self.nodes }
    }

    fn ball_diameter_ok(&self) -> bool {
        self.balls.iter().all(|&b| self.fits(0, b))
    }

    /// Whether `group ∪ add` keeps diameter at most `m`.
    fn fits(&self, group: u64, add: u64) -> bool {
        let all = group | add;
        let idx: Vec<usize> = (0..self.pts.len()).filter(|j| all >> j & 1 == 1).collect();
        (0..self.pts.len()).filter(|j| add >> j & 1 == 1).all(|a| idx.iter().all(|&b| self.dist[a][b] <= self.m))
    }

    fn assign(&mut self, i: usize, groups: &mut Vec<u64>, count: &mut [usize]) -> bool {
        if i == self.balls.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let ball = self.balls[i];
        // a ball already inside a member costs nothing
        if groups.iter().any(|g| ball & !g == 0) {
            return self.assign(i + 1, groups, count);
        }
        for g in 0..=groups.len() {
            let current = groups.get(g).copied().unwrap_or(0);
            let fresh = ball & !current;
            if (0..self.pts.len()).any(|j| fresh >> j & 1 == 1 && count[j] + 1 > self.n) || !self.fits(current, fresh) {
                continue;
            }
            for j in (0..self.pts.len()).filter(|j| fresh >> j & 1 == 1) {
                count[j] += 1;
            }
            if g == groups.len() {
                groups.push(fresh);
            } else {
                groups[g] |= fresh;
            }
            if self.assign(i + 1, groups, count) {
                return true;
            }
            if g == groups.len() - 1 && current == 0 {
                groups.pop();
            } else {
                groups[g] = current;
            }
            for j in (0..self.pts.len()).filter(|j| fresh >> j & 1 == 1) {
                count[j] -= 1;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}
