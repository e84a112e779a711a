use jettower::positivity::{morse_quantity, nef_recursion, NefVariant, UOrdering, WeightTuple};
use jettower::tower::Tower;

fn main() {
    let tower = Tower::symbolic().unwrap();
    let (b2, ell) = nef_recursion(2, 2, NefVariant::B).unwrap();
    let f = WeightTuple::new(b2.u_weights.clone(), ell);
    let g = WeightTuple::new(vec![0, 0], 24);
    for ord in [UOrdering::AsWritten, UOrdering::Swapped] {
        let t0 = std::time::Instant::now();
        let rep = morse_quantity(&tower, &f, &g, ord).unwrap();
        println!("ordering {:?} ({} ms)", ord, t0.elapsed().as_millis());
        println!("  chern form  = {}", rep.chern_form);
        println!("  degree poly = {}", rep.degree_poly);
        println!("  threshold   = {:?}", rep.threshold);
    }
}
