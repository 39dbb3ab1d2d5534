//! Merging records whose boxes touch.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{solve_node, Ctx, Flags, Node, Partial, Rec};
use crate::exec::Executor;
use crate::MACHINE_EPSILON;

const MAX_ROUNDS: usize = 8;

pub(crate) fn merge<E: Executor>(ctx: &Ctx<'_, E>, node: &Node, recs: Vec<Rec>, out: &mut Partial) -> Vec<Rec> {
    let (node_lo, node_hi) = node.bounds();
    let mut recs = recs;
    let mut tried: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for _ in 0..MAX_ROUNDS {
        let groups = touching_groups(&recs);
        if groups.iter().all(|g| g.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(recs.len());
        let mut resolved_any = false;
        for g in groups {
            if g.len() == 1 {
                next.push(recs[g[0]].clone());
                continue;
            }
            let (lo, hi) = hull(&recs, &g);
            let covers = lo.iter().zip(&node_lo).all(|(a, b)| a <= b) && hi.iter().zip(&node_hi).all(|(a, b)| a >= b);
            if covers || tried.iter().any(|(l, h)| *l == lo && *h == hi) {
                next.extend(collapse(&recs, &g, &lo, &hi));
                continue;
            }
            tried.push((lo.clone(), hi.clone()));
            let local = node.localize(&lo, &hi);
            let mut sub = node.zoom(&local, true, ctx.cfg);
            sub.depth = node.depth + 1;
            if sub.depth > ctx.cfg.max_depth {
                next.extend(collapse(&recs, &g, &lo, &hi));
                continue;
            }
            let part = solve_node(ctx, sub, false);
            next.extend(part.records.iter().cloned());
            out.absorb_stats(part.subdivisions, part.max_depth, part.events, ctx.cfg.harvest_exclusions);
            resolved_any = true;
        }
        recs = next;
        if !resolved_any {
            break;
        }
    }
    recs.sort_by(lex_order);
    recs
}

/// Every member gets the hull as its box; all but the first point are
/// flagged as possible duplicates.
fn collapse(recs: &[Rec], group: &[usize], lo: &[f64], hi: &[f64]) -> Vec<Rec> {
    let mut members: Vec<Rec> = group.iter().map(|&i| recs[i].clone()).collect();
    members.sort_by(|a, b| cmp_vec(&a.point, &b.point));
    for (k, m) in members.iter_mut().enumerate() {
        m.lo = lo.to_vec();
        m.hi = hi.to_vec();
        if k > 0 {
            m.flags.insert(Flags::POSSIBLE_DUPLICATE);
        }
    }
    members
}

fn hull(recs: &[Rec], group: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let mut lo = recs[group[0]].lo.clone();
    let mut hi = recs[group[0]].hi.clone();
    for &i in &group[1..] {
        for d in 0..lo.len() {
            lo[d] = lo[d].min(recs[i].lo[d]);
            hi[d] = hi[d].max(recs[i].hi[d]);
        }
    }
    (lo, hi)
}

fn touch(a: &Rec, b: &Rec) -> bool {
    a.lo.iter().zip(&a.hi).zip(b.lo.iter().zip(&b.hi)).all(|((l1, h1), (l2, h2))| {
        let t = MACHINE_EPSILON * l1.abs().max(h1.abs()).max(l2.abs()).max(h2.abs());
        *l1 <= *h2 + t && *l2 <= *h1 + t
    })
}

/// Connected components of the touching relation, each sorted, ordered by
/// smallest member.
fn touching_groups(recs: &[Rec]) -> Vec<Vec<usize>> {
    let n = recs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if touch(&recs[i], &recs[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = alloc::vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_slot[r] {
            Some(s) => groups[s].push(i),
            None => {
                root_slot[r] = Some(groups.len());
                groups.push(alloc::vec![i]);
            }
        }
    }
    groups
}

fn cmp_vec(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub(crate) fn lex_order(a: &Rec, b: &Rec) -> Ordering {
    cmp_vec(&a.lo, &b.lo)
        .then_with(|| cmp_vec(&a.hi, &b.hi))
        .then_with(|| cmp_vec(&a.point, &b.point))
        .then_with(|| a.flags.0.cmp(&b.flags.0))
}
