use rand::seq::SliceRandom;
use rand::Rng;

use super::shapes::ShapeCode;
use crate::perm::{Letter, MultisetPerm};
use crate::tree::OrderedTree;

/// A random labeled ordered tree. Labels are uniform given the shape; the
/// shape comes from a fair-coin Dyck walk and is not uniform over shapes.
pub fn random_tree<R: Rng + ?Sized>(order: usize, rng: &mut R) -> OrderedTree {
    assert!(order >= 1, "trees have at least one labeled vertex");
    let mut code = Vec::with_capacity(2 * order);
    let (mut opened, mut depth) = (0, 0);
    while code.len() < 2 * order {
        let can_open = opened < order;
        let can_close = depth > 0;
        let open = match (can_open, can_close) {
            (true, true) => rng.gen_bool(0.5),
            (open, _) => open,
        };
        if open {
            opened += 1;
            depth += 1;
        } else {
            depth -= 1;
        }
        code.push(open);
    }
    let shape = ShapeCode::new(code).expect("walk stays balanced");
    let mut labels: Vec<Letter> = (1..=order as Letter).collect();
    labels.shuffle(rng);
    OrderedTree::from_trusted(shape.template().children(&labels))
}

pub fn random_quasi_stirling<R: Rng + ?Sized>(order: usize, rng: &mut R) -> MultisetPerm {
    random_tree(order, rng).phi()
}
