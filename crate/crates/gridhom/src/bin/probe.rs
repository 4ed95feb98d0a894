// scratch probe, not part of the deliverable
use gridhom::braid::{braid_closure_grid, family_word};
use gridhom::fox::fox_alexander;
use gridhom::grid::GridDiagram;

fn delta(g: &GridDiagram) -> String {
    format!("{}", fox_alexander(&g.to_planar_diagram().unwrap()).unwrap())
}

fn staircase(a: usize, b: usize) -> Option<GridDiagram> {
    let n = a + b + 3;
    let mut pi = vec![0usize; n];
    for (j, p) in pi.iter_mut().enumerate() {
        *p = if j < a { j + 2 } else if j < a + b { j + 3 }
             else if j == a + b { 0 } else if j == a + b + 1 { 1 } else { a + 2 };
    }
    let o: Vec<usize> = (0..n).map(|j| n - 1 - j).collect();
    let x: Vec<usize> = (0..n).map(|j| n - 1 - pi[j]).collect();
    GridDiagram::new(n, o, x).ok()
}

fn main() {
    let w = family_word(&[4, 3], 1).unwrap();
    let closure = braid_closure_grid(&w).unwrap();
    println!("closure of [4][3]s2 (size {}): delta = {}", closure.size(), delta(&closure));
    let c = w.letters().len();
    for b in 1..=(c - 1) / 2 {
        let a = c - 2 * b;
        if a == 0 { break; }
        match staircase(a, b) {
            Some(g) if g.is_knot() => {
                println!("T((2,{a}),(3,{b})) size {}: delta = {}", g.size(), delta(&g));
            }
            Some(_) => println!("T((2,{a}),(3,{b})): link, skipped"),
            None => println!("T((2,{a}),(3,{b})): invalid grid"),
        }
    }
}
