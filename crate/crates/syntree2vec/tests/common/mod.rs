#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::IndexedRandom;
use rand::Rng;
use syntree2vec::core::rng;

pub const FIG1: &str = include_str!("../fixtures/fig1.conllu");

const LEXICON: &[(&str, &[&str])] = &[
    ("DET", &["the", "a", "this", "every"]),
    ("NOUN", &["man", "ball", "bucket", "dog", "house", "river", "bank", "idea", "city", "song"]),
    ("VERB", &["kicked", "saw", "likes", "built", "sings", "crossed", "found"]),
    ("ADJ", &["old", "red", "quiet", "large", "new"]),
    ("ADP", &["in", "near", "over", "with"]),
    ("PROPN", &["Ronaldo", "Ram", "Sheela", "Paris"]),
    ("PUNCT", &[".", ","]),
];

/// `n` random well-formed sentences in CoNLL-U, reproducible from `seed`.
pub fn synthetic_corpus(n: usize, seed: u64) -> String {
    let mut rng = rng::stream(seed, &[]);
    let mut out = String::new();
    for s in 0..n {
        let len = rng.random_range(2..=12usize);
        // Attach tokens in a random order, each to an already placed one.
        let mut order: Vec<usize> = (1..=len).collect();
        for i in (1..len).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut head = vec![0usize; len + 1];
        for k in 1..len {
            head[order[k]] = order[rng.random_range(0..k)];
        }
        writeln!(out, "# sent_id = s{s}").unwrap();
        for (id, &h) in head.iter().enumerate().skip(1) {
            let (tag, words) = LEXICON.choose(&mut rng).unwrap();
            let word = words.choose(&mut rng).unwrap();
            let rel = if h == 0 { "root" } else { "dep" };
            writeln!(out, "{id}\t{word}\t_\t{tag}\t_\t_\t{h}\t{rel}\t_\t_").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}
