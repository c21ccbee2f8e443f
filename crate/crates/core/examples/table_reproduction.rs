//! Rerun published error tables and print them next to the printed values.
//!
//! `cargo run --release --example table_reproduction -- t13 t55`

use mdi::bench::{reproduce_table, table_ids, Format, RunConfig};

fn main() {
    let mut ids: Vec<String> = std::env::args().skip(1).collect();
    if ids.is_empty() {
        ids = vec!["t1".into(), "t55".into()];
        println!("available: {}\n", table_ids().join(" "));
    }
    let base = RunConfig {
        repetitions: 1,
        ..RunConfig::default()
    };
    for id in ids {
        match reproduce_table(&id, &base) {
            Ok(run) => println!("{}", run.render(Format::Markdown)),
            Err(e) => eprintln!("{id}: {e}"),
        }
    }
}
