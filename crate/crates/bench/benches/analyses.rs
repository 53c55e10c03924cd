use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use raftkit_core::depth::{depth_filtration, DepthConfig};
use raftkit_core::gog::graph_from_json;
use raftkit_core::qi::{pattern_from_json, patterns_equivalent, DEFAULT_SEED};
use raftkit_core::tree::{ball_crossing_check, build_ball, strict_chain_depths};
use raftkit_core::GraphOfGroups;

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name);
    std::fs::read_to_string(path).expect("fixture readable")
}

fn graph(name: &str) -> GraphOfGroups {
    graph_from_json(&read(name)).expect("fixture parses")
}

fn depth(c: &mut Criterion) {
    let cfg = DepthConfig::default();
    for name in ["depth_example.json", "two_planes.json", "nonexample.json"] {
        let g = graph(name);
        c.bench_function(&format!("depth_filtration/{name}"), |b| {
            b.iter(|| depth_filtration(black_box(&g), &cfg).unwrap())
        });
    }
}

fn balls(c: &mut Criterion) {
    let g = graph("bs22.json");
    for radius in [2, 4] {
        c.bench_function(&format!("build_ball/bs22/r{radius}"), |b| {
            b.iter(|| build_ball(black_box(&g), "v", radius, 3).unwrap())
        });
    }
    let g = graph("f2xz.json");
    let ball = build_ball(&g, "v", 2, 3).unwrap();
    c.bench_function("ball_crossing_check/f2xz/r2", |b| {
        b.iter(|| ball_crossing_check(black_box(&g), &ball).unwrap())
    });
    let g = graph("depth_example.json");
    let ball = build_ball(&g, "v", 3, 2).unwrap();
    c.bench_function("strict_chain_depths/depth_example/r3", |b| {
        b.iter(|| strict_chain_depths(black_box(&g), &ball).unwrap())
    });
}

fn patterns(c: &mut Criterion) {
    let p = pattern_from_json(&read("lines_0_inf_1_2.json")).unwrap();
    let q = pattern_from_json(&read("lines_0_inf_1_2_sheared.json")).unwrap();
    let r = pattern_from_json(&read("lines_0_inf_1_3.json")).unwrap();
    c.bench_function("patterns_equivalent/equivalent", |b| {
        b.iter(|| patterns_equivalent(black_box(&p), &q, DEFAULT_SEED).unwrap())
    });
    c.bench_function("patterns_equivalent/inequivalent", |b| {
        b.iter(|| patterns_equivalent(black_box(&p), &r, DEFAULT_SEED).unwrap())
    });
    let planes = pattern_from_json(&read("planes4.json")).unwrap();
    c.bench_function("patterns_equivalent/planes4", |b| {
        b.iter(|| patterns_equivalent(black_box(&planes), &planes, DEFAULT_SEED).unwrap())
    });
}

criterion_group!(benches, depth, balls, patterns);
criterion_main!(benches);
