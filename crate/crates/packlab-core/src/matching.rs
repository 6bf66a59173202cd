//! Bipartite matchings that must cover prescribed vertex sets on both sides.
//!
//! The element-matching packing distance needs a one-to-one pairing that
//! covers every required element of `P` and every required element of `Q`
//! simultaneously. A matching saturating the required left set and a
//! matching saturating the required right set can always be merged into one
//! that saturates both (Mendelsohn–Dulmage): components of the union of two
//! matchings are alternating paths/cycles, and a component never demands
//! both matchings at once.

use alloc::vec;
use alloc::vec::Vec;

/// Kuhn augmenting search covering every `required` left vertex, ignoring
/// the others. Returns `match_of_right` on success.
fn kuhn_cover(
    adj: &[Vec<usize>],
    n_right: usize,
    required: &[bool],
) -> Option<Vec<Option<usize>>> {
    let n_left = adj.len();
    let mut match_of_right: Vec<Option<usize>> = vec![None; n_right];
    let mut seen = vec![u32::MAX; n_right];

    fn try_augment(
        u: usize,
        adj: &[Vec<usize>],
        match_of_right: &mut [Option<usize>],
        seen: &mut [u32],
        stamp: u32,
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] == stamp {
                continue;
            }
            seen[v] = stamp;
            if match_of_right[v].is_none()
                || try_augment(match_of_right[v].unwrap(), adj, match_of_right, seen, stamp)
            {
                match_of_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut stamp = 0;
    for u in 0..n_left {
        if !required[u] {
            continue;
        }
        if !try_augment(u, adj, &mut match_of_right, &mut seen, stamp) {
            return None;
        }
        stamp += 1;
    }
    Some(match_of_right)
}

/// Find a matching covering all required left and all required right
/// vertices, or `None` if no such matching exists. `adj[l]` lists the right
/// neighbours of left vertex `l`.
pub(crate) fn covering_matching(
    adj: &[Vec<usize>],
    n_right: usize,
    required_left: &[bool],
    required_right: &[bool],
) -> Option<Vec<(usize, usize)>> {
    let n_left = adj.len();

    let m1_of_right = kuhn_cover(adj, n_right, required_left)?;
    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n_right];
    for (l, vs) in adj.iter().enumerate() {
        for &r in vs {
            radj[r].push(l);
        }
    }
    let m2_of_left = kuhn_cover(&radj, n_left, required_right)?;

    // edge sets as per-node partners
    let mut m1_of_left: Vec<Option<usize>> = vec![None; n_left];
    for (r, l) in m1_of_right.iter().enumerate() {
        if let Some(l) = l {
            m1_of_left[*l] = Some(r);
        }
    }
    let mut m2_of_right: Vec<Option<usize>> = vec![None; n_right];
    for (l, r) in m2_of_left.iter().enumerate() {
        if let Some(r) = r {
            m2_of_right[*r] = Some(l);
        }
    }

    // components of M1 union M2 over nodes (left: 0..n_left, right: n_left..)
    let total = n_left + n_right;
    let mut comp = vec![usize::MAX; total];
    let mut n_comp = 0;
    for start in 0..total {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = n_comp;
        while let Some(node) = stack.pop() {
            let push = |next: usize, comp: &mut Vec<usize>, stack: &mut Vec<usize>| {
                if comp[next] == usize::MAX {
                    comp[next] = n_comp;
                    stack.push(next);
                }
            };
            if node < n_left {
                if let Some(r) = m1_of_left[node] {
                    push(n_left + r, &mut comp, &mut stack);
                }
                if let Some(r) = m2_of_left[node] {
                    push(n_left + r, &mut comp, &mut stack);
                }
            } else {
                let r = node - n_left;
                if let Some(l) = m1_of_right[r] {
                    push(l, &mut comp, &mut stack);
                }
                if let Some(l) = m2_of_right[r] {
                    push(l, &mut comp, &mut stack);
                }
            }
        }
        n_comp += 1;
    }

    // a component must keep M1 when it holds a required-left vertex that M2
    // misses, and M2 when it holds a required-right vertex that M1 misses
    let mut needs_m2 = vec![false; n_comp];
    for r in 0..n_right {
        if required_right[r] && m1_of_right[r].is_none() {
            needs_m2[comp[n_left + r]] = true;
        }
    }
    debug_assert!((0..n_left).all(|l| {
        !(required_left[l] && m2_of_left[l].is_none() && needs_m2[comp[l]])
    }));

    let mut pairs = Vec::new();
    for l in 0..n_left {
        let pick = if needs_m2[comp[l]] {
            m2_of_left[l]
        } else {
            m1_of_left[l]
        };
        if let Some(r) = pick {
            pairs.push((l, r));
        }
    }
    Some(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: does any one-to-one pairing cover both required sets?
    fn exists_brute(
        adj: &[Vec<usize>],
        n_right: usize,
        req_l: &[bool],
        req_r: &[bool],
    ) -> bool {
        fn rec(
            l: usize,
            adj: &[Vec<usize>],
            used: &mut Vec<bool>,
            matched_l: &mut Vec<Option<usize>>,
            req_l: &[bool],
        ) -> bool {
            if l == adj.len() {
                return true;
            }
            // option: leave l unmatched (allowed if not required)
            if !req_l[l] && rec(l + 1, adj, used, matched_l, req_l) {
                return true;
            }
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    matched_l[l] = Some(r);
                    if rec(l + 1, adj, used, matched_l, req_l) {
                        used[r] = false;
                        matched_l[l] = None;
                        return true;
                    }
                    used[r] = false;
                    matched_l[l] = None;
                }
            }
            false
        }
        // iterate over which right vertices end up covered: simpler to fold the
        // right requirement into the recursion result by post-checking
        fn rec_full(
            l: usize,
            adj: &[Vec<usize>],
            used: &mut Vec<bool>,
            req_l: &[bool],
            req_r: &[bool],
        ) -> bool {
            if l == adj.len() {
                return req_r.iter().enumerate().all(|(r, &req)| !req || used[r]);
            }
            if !req_l[l] && rec_full(l + 1, adj, used, req_l, req_r) {
                return true;
            }
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    if rec_full(l + 1, adj, used, req_l, req_r) {
                        used[r] = false;
                        return true;
                    }
                    used[r] = false;
                }
            }
            false
        }
        let _ = rec;
        rec_full(0, adj, &mut vec![false; n_right], req_l, req_r)
    }

    fn check_pairs(
        adj: &[Vec<usize>],
        req_l: &[bool],
        req_r: &[bool],
        pairs: &[(usize, usize)],
    ) {
        let mut seen_l = vec![false; adj.len()];
        let mut seen_r = vec![false; req_r.len()];
        for &(l, r) in pairs {
            assert!(adj[l].contains(&r), "pair must be an edge");
            assert!(!seen_l[l] && !seen_r[r], "matching must be one-to-one");
            seen_l[l] = true;
            seen_r[r] = true;
        }
        for (l, &req) in req_l.iter().enumerate() {
            assert!(!req || seen_l[l], "required left {l} uncovered");
        }
        for (r, &req) in req_r.iter().enumerate() {
            assert!(!req || seen_r[r], "required right {r} uncovered");
        }
    }

    #[test]
    fn simple_cases() {
        // perfect matching on a 2-cycle
        let adj = vec![vec![0, 1], vec![0]];
        let pairs =
            covering_matching(&adj, 2, &[true, true], &[true, false]).expect("matchable");
        check_pairs(&adj, &[true, true], &[true, false], &pairs);

        // impossible: two required lefts share one right
        assert!(covering_matching(&[vec![0], vec![0]], 1, &[true, true], &[false]).is_none());

        // required right reachable only through an optional left
        let adj = vec![vec![0], vec![1]];
        let pairs = covering_matching(&adj, 2, &[false, false], &[true, true]).unwrap();
        check_pairs(&adj, &[false, false], &[true, true], &pairs);
    }

    #[test]
    fn randomized_against_brute_force() {
        // deterministic xorshift; sizes up to 7x7 keep the oracle trivial
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _case in 0..400 {
            let n_left = (next() % 7) as usize + 1;
            let n_right = (next() % 7) as usize + 1;
            let mut adj = vec![Vec::new(); n_left];
            for (l, row) in adj.iter_mut().enumerate() {
                for r in 0..n_right {
                    if next() % 100 < 35 {
                        row.push(r);
                    }
                }
                let _ = l;
            }
            let req_l: Vec<bool> = (0..n_left).map(|_| next() % 2 == 0).collect();
            let req_r: Vec<bool> = (0..n_right).map(|_| next() % 2 == 0).collect();
            let got = covering_matching(&adj, n_right, &req_l, &req_r);
            let want = exists_brute(&adj, n_right, &req_l, &req_r);
            match got {
                Some(pairs) => {
                    assert!(want, "matcher found pairs where brute force says none");
                    check_pairs(&adj, &req_l, &req_r, &pairs);
                }
                None => assert!(!want, "matcher missed a covering matching"),
            }
        }
    }
}
