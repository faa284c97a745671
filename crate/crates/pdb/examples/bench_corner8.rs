use pdb::PatternDatabase;
use puzzle_core::Pattern;
use std::time::Instant;

fn main() {
    let p = Pattern::corners((0..8).collect()).unwrap();
    let t = Instant::now();
    let db = PatternDatabase::build(&p).unwrap();
    println!("built in {:?}", t.elapsed());
    println!("avg {:.4}", db.average());
    println!("dist {:?}", db.distribution());
}
