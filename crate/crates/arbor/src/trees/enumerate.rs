use super::SignedRootedTree;
use std::collections::BTreeMap;

/// A rooted shape whose edges to children are all signed.
#[derive(Debug, Clone)]
struct Shape {
    size: usize,
    code: String,
    children: Vec<(i8, usize)>,
}

/// Every isomorphism class with at most `max_vertices` vertices, one
/// representative each, sorted by canonical encoding.
///
/// Classes are generated directly as multisets of children: a subtree
/// below the root is a multiset of (sign, subtree) pairs, and the root
/// itself is a multiset of unsigned subtrees.
pub fn enumerate(max_vertices: usize) -> Vec<SignedRootedTree> {
    if max_vertices == 0 {
        return Vec::new();
    }
    let shapes = signed_shapes(max_vertices.saturating_sub(1));
    let mut out: Vec<(String, SignedRootedTree)> = Vec::new();
    for k in 1..=max_vertices {
        // Root children: multisets of shapes, sizes summing to k − 1.
        let items: Vec<usize> = (0..shapes.len()).filter(|&i| shapes[i].size < k).collect();
        let mut pick = Vec::new();
        multisets(&items, &|i| shapes[i].size, k - 1, 0, &mut pick, &mut |chosen| {
            let t = build(&shapes, chosen.iter().map(|&i| (0, i)).collect());
            out.push((t.canonical_form(), t));
        });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, t)| t).collect()
}

/// All fully signed shapes with at most `max` vertices.
fn signed_shapes(max: usize) -> Vec<Shape> {
    let mut shapes: Vec<Shape> = Vec::new();
    for k in 1..=max {
        // Items are (sign, shape) pairs; item index 2·s + (sign < 0).
        let items: Vec<usize> = (0..2 * shapes.len()).collect();
        let size_of = |it: usize| shapes[it / 2].size;
        let mut fresh = Vec::new();
        let mut pick = Vec::new();
        multisets(&items, &size_of, k - 1, 0, &mut pick, &mut |chosen| {
            let children: Vec<(i8, usize)> = chosen
                .iter()
                .map(|&it| (if it % 2 == 0 { 1 } else { -1 }, it / 2))
                .collect();
            let mut parts: Vec<String> = children
                .iter()
                .map(|&(s, c)| format!("{}{}", if s > 0 { "+" } else { "-" }, shapes[c].code))
                .collect();
            parts.sort();
            fresh.push(Shape { size: k, code: format!("({})", parts.concat()), children });
        });
        shapes.extend(fresh);
    }
    shapes
}

/// Nondecreasing index sequences from `items[start..]` whose sizes sum to `remaining`.
fn multisets(
    items: &[usize],
    size_of: &dyn Fn(usize) -> usize,
    remaining: usize,
    start: usize,
    pick: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(pick);
        return;
    }
    for pos in start..items.len() {
        let s = size_of(items[pos]);
        if s <= remaining {
            pick.push(items[pos]);
            multisets(items, size_of, remaining - s, pos, pick, emit);
            pick.pop();
        }
    }
}

/// Materialize a root with the given (sign, shape) children; sign 0 means unsigned.
fn build(shapes: &[Shape], root_children: Vec<(i8, usize)>) -> SignedRootedTree {
    let mut edges = Vec::new();
    let mut signs = BTreeMap::new();
    let mut next = 1;
    let mut stack: Vec<(usize, i8, usize)> =
        root_children.into_iter().map(|(s, c)| (0, s, c)).collect();
    while let Some((parent, sign, shape)) = stack.pop() {
        let id = next;
        next += 1;
        edges.push((parent, id));
        if sign != 0 {
            signs.insert((parent, id), sign);
        }
        for &(s, c) in &shapes[shape].children {
            stack.push((id, s, c));
        }
    }
    SignedRootedTree::new(next, 0, edges, signs).expect("generated trees are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(1).len(), 1);
        assert_eq!(enumerate(2).len(), 2);
        // point, A2, the 2-star, and the two signed A3 chains.
        assert_eq!(enumerate(3).len(), 5);
    }

    #[test]
    fn representatives_are_pairwise_distinct() {
        let all = enumerate(5);
        let mut codes: Vec<String> = all.iter().map(|t| t.canonical_form()).collect();
        let sorted = codes.clone();
        codes.dedup();
        assert_eq!(codes, sorted);
    }
}
