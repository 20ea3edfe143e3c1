//! Writes a synthetic collection to JSONL, reads it back with and without a
//! vocabulary file, and adds positional noise.

use layout_metrics::harness::{perturb, synthetic_collection, PerturbConfig, PerturbKind, SyntheticConfig};
use layout_metrics::model::{load_collection, load_collection_inferred, save_collection, Vocabulary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("layout-metrics-example-io");
    std::fs::create_dir_all(&dir)?;
    let data = dir.join("layouts.jsonl");
    let vocab = dir.join("vocab.json");

    let c = synthetic_collection(&SyntheticConfig {
        layouts: 5,
        categories: 3,
        ..Default::default()
    });
    save_collection(&c, &data, None)?;
    let names = Vocabulary::new(["text", "title", "figure"]);
    std::fs::write(&vocab, serde_json::to_string(&names)?)?;

    let named = load_collection(&data, &vocab)?;
    let inferred = load_collection_inferred(&data)?;
    println!(
        "{} layouts; vocabularies {:?} and {:?}",
        named.len(),
        named.vocabulary.0,
        inferred.vocabulary.0
    );

    let noisy = perturb(&named, &PerturbConfig::new(0.3, PerturbKind::Positional, 1))?;
    let out = dir.join("noisy.jsonl");
    save_collection(&noisy, &out, Some(&serde_json::json!({"rate": 0.3})))?;
    println!("wrote {}", out.display());
    println!("{}", std::fs::read_to_string(&out)?.lines().nth(1).unwrap_or_default());
    Ok(())
}
