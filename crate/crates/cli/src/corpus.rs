//! Bundled diagrams: closed braids with every coloring shape worth testing.
//!
//! Words use `sK` for the positive generator on positions K, K+1 (1-based),
//! `SK` for its inverse and `tK` for the singular one.

use tangle_core::diagram::braid::{braid_closure, Generator};
use tangle_core::diagram::{Coloration, Diagram};

use crate::format::LinkFile;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub file: LinkFile,
}

impl CorpusEntry {
    pub fn crossings(&self) -> usize {
        self.file.diagram.classical_count()
    }

    pub fn vertices(&self) -> usize {
        self.file.diagram.singular_count()
    }
}

pub fn parse_word(word: &str) -> Option<Vec<Generator>> {
    word.split_whitespace()
        .map(|tok| {
            let (head, rest) = tok.split_at(1);
            let i: usize = rest.parse().ok().filter(|&i| i >= 1)?;
            match head {
                "s" => Some(Generator::Sigma(i - 1)),
                "S" => Some(Generator::SigmaInv(i - 1)),
                "t" => Some(Generator::Tau(i - 1)),
                _ => None,
            }
        })
        .collect()
}

pub fn closure(strands: usize, word: &str) -> Diagram {
    braid_closure(strands, &parse_word(word).expect("corpus words are well formed"))
}

/// Uniform, all distinct and, from three components on, first two shared.
fn colorings(n: usize) -> Vec<(&'static str, Coloration)> {
    let mut out = vec![("one color", Coloration::uniform(n))];
    if n >= 2 {
        out.push(("distinct colors", Coloration::distinct(n)));
    }
    if n >= 3 {
        let mut c = Coloration::distinct(n);
        c.0[1] = 0;
        out.push(("mixed colors", c));
    }
    out
}

fn expand(list: &[(&str, usize, &str)]) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for &(name, strands, word) in list {
        let d = closure(strands, word);
        for (tag, c) in colorings(d.component_count()) {
            out.push(CorpusEntry { name: format!("{name} [{tag}]"), file: LinkFile::new(d.clone(), &c) });
        }
    }
    out
}

const CLASSICAL: &[(&str, usize, &str)] = &[
    ("unknot, one curl", 2, "s1"),
    ("unknot, negative curl", 2, "S1"),
    ("positive Hopf", 2, "s1 s1"),
    ("negative Hopf", 2, "S1 S1"),
    ("unlink, two crossings", 2, "s1 S1"),
    ("right trefoil", 2, "s1 s1 s1"),
    ("left trefoil", 2, "S1 S1 S1"),
    ("torus link T(2,4)", 2, "s1 s1 s1 s1"),
    ("torus link T(2,-4)", 2, "S1 S1 S1 S1"),
    ("cinquefoil", 2, "s1 s1 s1 s1 s1"),
    ("torus link T(2,6)", 2, "s1 s1 s1 s1 s1 s1"),
    ("unknot, two curls", 3, "s1 S2"),
    ("figure-eight", 3, "s1 S2 s1 S2"),
    ("trefoil on three strands", 3, "s1 s1 s1 s2"),
    ("Hopf sum Hopf", 3, "s1 s1 s2 s2"),
    ("Hopf sum negative Hopf", 3, "s1 s1 S2 S2"),
    ("Hopf with a curl", 3, "s1 s1 s2"),
    ("torus knot T(3,2)", 3, "s1 s2 s1 s2"),
    ("torus link T(3,3)", 3, "s1 s2 s1 s2 s1 s2"),
    ("Borromean rings", 3, "s1 S2 s1 S2 s1 S2"),
    ("granny knot", 3, "s1 s1 s1 s2 s2 s2"),
    ("square knot", 3, "s1 s1 s1 S2 S2 S2"),
    ("three-strand mix", 3, "s1 s1 S2 s1 s2"),
    ("five-crossing closure", 3, "s1 s1 S2 s1 S2"),
    ("chain of two Hopf pairs", 4, "s1 s1 s3 s3"),
    ("four-strand twist", 4, "s1 s2 s3 s1"),
    ("four-strand mix", 4, "s1 S2 s3 S2 s1"),
];

const SINGULAR: &[(&str, usize, &str)] = &[
    ("vertex curl", 2, "t1"),
    ("vertex bigon", 2, "t1 t1"),
    ("vertex with positive crossing", 2, "t1 s1"),
    ("vertex with negative crossing", 2, "t1 S1"),
    ("vertex in a trefoil", 2, "t1 s1 s1"),
    ("vertex in a left trefoil", 2, "t1 S1 S1"),
    ("three vertices", 2, "t1 t1 t1"),
    ("two vertices and a crossing", 2, "t1 s1 t1"),
    ("vertex in T(2,4)", 2, "t1 s1 s1 s1"),
    ("vertex in T(2,6)", 2, "t1 s1 s1 s1 s1 s1"),
    ("vertex chain", 3, "t1 t2"),
    ("vertex with far crossing", 3, "t1 s2"),
    ("vertex in a figure-eight", 3, "t1 S2 s1 S2"),
    ("vertex triangle", 3, "t1 t2 t1"),
    ("vertices and crossings", 3, "t1 s2 t1 S2"),
    ("vertex in Borromean rings", 3, "t1 S2 s1 S2 s1"),
    ("vertex in a negative T(2,4)", 2, "t1 S1 S1 S1"),
    ("vertex bigon with a clasp", 2, "t1 t1 s1 s1"),
    ("vertex bigon with a negative clasp", 2, "t1 t1 S1 S1"),
    ("vertex bigon beside Hopf", 3, "t1 t1 s2 s2"),
    ("vertex clasp beside negative Hopf", 3, "t1 s1 S2 S2"),
    ("vertex bigon beside a cancelling pair", 3, "t1 t1 s2 S2"),
    ("vertex bigon and Hopf apart", 4, "t1 t1 s3 s3"),
];

pub fn classical() -> Vec<CorpusEntry> {
    let mut out = vec![
        CorpusEntry { name: "unknot".into(), file: LinkFile::uniform(Diagram::unknot()) },
        CorpusEntry {
            name: "two-component unlink [one color]".into(),
            file: LinkFile::uniform(Diagram::new(vec![], vec![0, 1]).expect("two loops")),
        },
        CorpusEntry {
            name: "two-component unlink [distinct colors]".into(),
            file: LinkFile::new(Diagram::new(vec![], vec![0, 1]).expect("two loops"), &Coloration::distinct(2)),
        },
    ];
    out.extend(expand(CLASSICAL));
    out
}

pub fn singular() -> Vec<CorpusEntry> {
    expand(SINGULAR)
}

pub fn all() -> Vec<CorpusEntry> {
    let mut out = classical();
    out.extend(singular());
    out
}
