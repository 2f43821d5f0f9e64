//! Fraction-free elimination: rank, primitive nullspace, determinant.

use plane_ivhs::exact::linalg::{determinant, nullspace, rank};
use plane_ivhs::exact::{int, ratio};

fn main() {
    let m = vec![
        vec![int(1), int(2), int(3), int(4)],
        vec![int(2), int(4), int(6), int(8)],
        vec![ratio(1, 2), int(0), int(1), ratio(-3, 4)],
    ];
    println!("rank = {}", rank(&m, 4));
    for v in nullspace(&m, 4) {
        let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        println!("kernel vector [{}]", s.join(", "));
    }
    let sq = vec![
        vec![int(2), int(-1), int(0)],
        vec![int(-1), int(2), int(-1)],
        vec![int(0), int(-1), int(2)],
    ];
    println!("det(A_3 Cartan) = {}", determinant(&sq));
}
