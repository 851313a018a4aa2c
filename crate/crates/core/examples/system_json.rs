//! Systems and filters round-trip through JSON; this is the format the
//! `voltlin psi` and `voltlin linearize` commands read.
//!
//!     cargo run --example system_json

use voltlin::schema::{filter_from_json, filter_to_json, system_from_json, system_to_json};
use voltlin::FirFilter;

const SYSTEM: &str = r#"{ "orders": [
  { "p": 1, "terms": [ { "gain": { "constant": 1 }, "factors": [[1.0, 0.1]] } ] },
  { "p": 3, "terms": [
    { "gain": { "raised_cosine": { "base": -0.1, "depth": 0.03, "rate": 0.008 } },
      "factors": [[1], [1], [[0.9, 0.1]]] } ] } ] }"#;

fn main() -> voltlin::Result<()> {
    let h = system_from_json(SYSTEM)?;
    println!("parsed: orders {:?}, {} terms", h.orders(), h.terms().len());
    let text = system_to_json(&h);
    println!("{text}");
    assert_eq!(system_from_json(&text)?, h);

    let q = FirFilter::pure_gain_inverse(50.0)?;
    let q_text = filter_to_json(&q);
    println!("{q_text}");
    assert_eq!(filter_from_json(&q_text)?, q);

    match system_from_json(r#"{ "orders": [ { "p": 2, "terms": [ { "gain": { "constant": 1 }, "factors": [[1]] } ] } ] }"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
