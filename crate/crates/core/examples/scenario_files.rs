// Reading a scenario file and producing the same document as the command
// line `solve`.

use pseudoquad::cli::{analyze, ResultDocument, ScenarioFile};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/robot_below_circumcenter.json"
    );
    let file = ScenarioFile::load(std::path::Path::new(path))?;
    let doc = analyze(&file, "intersect", None)?;
    let text = doc.to_json();
    assert_eq!(ResultDocument::parse(&text)?, doc);
    println!(
        "count {:?}, Q_sol {:?}, Q_sat' {:?}",
        doc.count, doc.q_sol.kind, doc.q_sat.descriptor.kind
    );
    if let Some(inter) = &doc.candidates {
        for c in &inter.candidates {
            println!("candidate x = {:?}, b = {:.6}", c.x.as_slice(), c.b);
        }
    }
    println!("{} bytes of JSON", text.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
