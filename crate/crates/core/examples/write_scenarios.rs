//! Regenerates the bundled scenario files from the builtin constructors.

use conley_core::scenario::builtin;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "scenarios".into());
    std::fs::create_dir_all(&dir).unwrap();
    for (name, mut config) in builtin::all() {
        config.output.path = format!("out/{name}.json");
        config.output.emit_witness_csv = true;
        config.output.emit_betti_csv = true;
        let path = format!("{dir}/{name}.json");
        let mut text = serde_json::to_string_pretty(&config).unwrap();
        text.push('\n');
        std::fs::write(&path, text).unwrap();
        println!("wrote {path}");
    }
}
