use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use calsim::synthetic::{generate, SyntheticConfig};

fn calsim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_calsim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn prepare_writes_store_vocabulary_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        &d.join("docs.jsonl"),
        concat!(
            "{\"id\":\"a\",\"text\":\"Salmon swim upstream. Bears eat salmon.\"}\n",
            "{\"id\":\"b\",\"text\":\"Stock prices fell. Salmon prices rose! Traders worried.\"}\n",
            "{\"id\":\"c\",\"text\":\"Nothing here.\"}\n",
        ),
    );
    write(&d.join("qrels.txt"), "1 0 a 1\n1 0 b 0\n1 0 c 0\n");
    write(&d.join("sqrels.txt"), "1 0 a#0 0\n1 0 a#1 1\n");
    let args = [
        "prepare",
        "--collection",
        "docs.jsonl",
        "--doc-qrels",
        "qrels.txt",
        "--sent-qrels",
        "sqrels.txt",
        "--out",
        "prep",
    ];
    ok(&calsim(&args, d));
    let store = fs::read_to_string(d.join("prep/store.jsonl")).unwrap();
    assert_eq!(store.lines().count(), 3);
    let collection = calsim::corpus::read_store(&d.join("prep/store.jsonl")).unwrap();
    assert_eq!(collection.union_len(), 3 + 2 + 3 + 1);

    let vocab = fs::read(d.join("prep/vocab.tsv")).unwrap();
    ok(&calsim(&args, d));
    assert_eq!(fs::read(d.join("prep/vocab.tsv")).unwrap(), vocab);

    let stats = fs::read_to_string(d.join("prep/stats.csv")).unwrap();
    // topic 1: one relevant doc with 2 sentences, first relevant at 2
    assert!(stats.contains("docs,1,2.0000,2.0000,1.0000,2.0000,1.0000"), "{stats}");

    let out = calsim(&["prepare", "--collection", "missing.jsonl", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.jsonl"));
}

#[test]
fn label_sentences_from_passages() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // sentence spans: [0, 19) [20, 39) [40, 58)
    write(
        &d.join("docs.jsonl"),
        "{\"id\":\"a\",\"text\":\"First sentence one. Second sentence 2. Third sentence x.\"}\n{\"id\":\"b\",\"text\":\"Other doc.\"}\n",
    );
    ok(&calsim(&["prepare", "--collection", "docs.jsonl", "--out", "prep"], d));
    write(&d.join("passages.txt"), "7 a 22 30\n");
    write(&d.join("qrels.txt"), "7 0 a 1\n7 0 b 0\n");
    ok(&calsim(
        &[
            "label-sentences",
            "--collection",
            "prep",
            "--passages",
            "passages.txt",
            "--doc-qrels",
            "qrels.txt",
            "--out",
            "s.txt",
        ],
        d,
    ));
    let labels = fs::read_to_string(d.join("s.txt")).unwrap();
    let mut lines: Vec<&str> = labels.lines().collect();
    lines.sort();
    assert_eq!(lines, ["7 0 a#0 0", "7 0 a#1 1", "7 0 a#2 0", "7 0 b#0 0"]);

    write(&d.join("bad.txt"), "7 zzz 0 4\n");
    let out = calsim(
        &[
            "label-sentences",
            "--collection",
            "prep",
            "--passages",
            "bad.txt",
            "--out",
            "s.txt",
        ],
        d,
    );
    assert_eq!(out.status.code(), Some(2));
}

fn synthetic_inputs(dir: &Path, documents: usize, topics: usize, fraction: f64) {
    let corpus = generate(&SyntheticConfig {
        documents,
        topics,
        relevant_fraction: fraction,
        seed: 3,
        ..SyntheticConfig::default()
    })
    .unwrap();
    corpus.write_to(&dir.join("syn")).unwrap();
    ok(&calsim(
        &[
            "prepare",
            "--collection",
            "syn/docs.jsonl",
            "--doc-qrels",
            "syn/qrels.doc.txt",
            "--out",
            "prep",
        ],
        dir,
    ));
}

const RUN: &[&str] = &[
    "run",
    "--collection",
    "prep",
    "--topics",
    "syn/topics.jsonl",
    "--doc-qrels",
    "syn/qrels.doc.txt",
    "--sent-qrels",
    "syn/qrels.sent.txt",
    "--iterations",
    "2000",
];

#[test]
fn run_and_eval_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synthetic_inputs(d, 120, 2, 0.1);

    let mut args = RUN.to_vec();
    args.extend([
        "--strategies",
        "all",
        "--budget",
        "2R+5",
        "--seed",
        "3",
        "--out",
        "out1",
    ]);
    ok(&calsim(&args, d));
    let logs: Vec<_> = walk(&d.join("out1/runs"));
    assert_eq!(logs.len(), 16);
    assert!(d.join("out1/manifest.toml").is_file());
    let first = fs::read_to_string(d.join("out1/runs/sdd/T01.tsv")).unwrap();
    // R = 12, budget 2R+5 = 29 judgments plus a header
    assert_eq!(first.lines().count(), 30);

    args.pop();
    args.push("out2");
    ok(&calsim(&args, d));
    for path in &logs {
        let other = d.join("out2").join(path.strip_prefix(d.join("out1")).unwrap());
        assert_eq!(fs::read(path).unwrap(), fs::read(other).unwrap());
    }

    ok(&calsim(
        &[
            "eval",
            "--runs",
            "out1",
            "--doc-qrels",
            "syn/qrels.doc.txt",
            "--name",
            "syn",
            "--compare",
            "ddd:sdd",
            "--out",
            "ev",
        ],
        d,
    ));
    let table = fs::read_to_string(d.join("ev/recall_table.csv")).unwrap();
    assert!(table.starts_with("dataset,effort,ddd,sdd,dsd,ssd,dds,sds,dss,sss\nsyn,1R_Judge,"));
    assert_eq!(table.lines().count(), 1 + 2 * 27);
    let cmp = fs::read_to_string(d.join("ev/comparisons/syn/ddd_vs_sdd.csv")).unwrap();
    // 21 lambdas for each of a = 1, 2, 4
    assert_eq!(cmp.lines().count(), 1 + 3 * 21);
    assert!(d.join("ev/gain/syn/sss/T02_Sent.csv").is_file());

    let out = calsim(
        &[
            "eval",
            "--runs",
            "out1",
            "--doc-qrels",
            "syn/qrels.doc.txt",
            "--strategies",
            "xdd",
            "--out",
            "ev",
        ],
        d,
    );
    assert_eq!(out.status.code(), Some(1));

    write(&d.join("partial.txt"), "T01 0 d001 1\n");
    let out = calsim(
        &["eval", "--runs", "out1", "--doc-qrels", "partial.txt", "--out", "ev"],
        d,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("T02"));

    let out = calsim(&["run", "--collection", "prep"], d);
    assert_eq!(out.status.code(), Some(1));
    let mut bad = RUN.to_vec();
    bad.extend(["--strategies", "dd", "--out", "o"]);
    assert_eq!(calsim(&bad, d).status.code(), Some(1));
}

#[test]
fn budget_expression_sets_run_length() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // 50 relevant documents per topic
    synthetic_inputs(d, 1300, 1, 50.0 / 1300.0);
    write(
        &d.join("m.toml"),
        "collection = \"prep\"\ntopics = \"syn/topics.jsonl\"\ndoc_qrels = \"syn/qrels.doc.txt\"\nsent_qrels = \"syn/qrels.sent.txt\"\nstrategies = [\"sdd\"]\nbudget = \"4R+1000\"\niterations = 500\nout = \"out\"\n",
    );
    ok(&calsim(&["run", "--manifest", "m.toml"], d));
    let log = fs::read_to_string(d.join("out/runs/sdd/T01.tsv")).unwrap();
    assert_eq!(log.lines().count(), 1 + 1200);
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}
