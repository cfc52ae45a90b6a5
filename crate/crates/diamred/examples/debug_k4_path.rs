use diamred::graph::{bfs, Direction, INF};
use diamred::kov::{augment_all_ones, decide, generate, GenMode, KovAnswer};
use diamred::reduction::k4::{build_k4, K4Options};
use diamred::reduction::{witness_pair, BuildOptions};

fn main() {
    let inst = augment_all_ones(&generate(GenMode::PlantYes, 4, 4, 4, 1, 0.7).unwrap());
    for (i, v) in inst.vectors.iter().enumerate() {
        println!("vec {i}: {}", v.to_bit_string());
    }
    let KovAnswer::Yes(w) = decide(&inst) else { panic!() };
    println!("witness {w:?}");
    let g = build_k4(&inst, K4Options::default(), &BuildOptions::default()).unwrap();
    let (a, b) = witness_pair(&inst, &g.table, &w).unwrap();
    let graph = g.graph.as_ref().unwrap();
    let dist = bfs(graph, a, Direction::Forward).unwrap();
    println!("d(alpha, beta) = {}", dist[b as usize]);
    // reconstruct one shortest path by walking backwards
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        let dc = dist[cur as usize];
        assert_ne!(dc, INF);
        let prev = graph
            .r_out(cur)
            .iter()
            .copied()
            .find(|&p| dist[p as usize] + 1 == dc)
            .unwrap();
        path.push(prev);
        cur = prev;
    }
    path.reverse();
    for pair in path.windows(2) {
        let kind = graph.arc_kind(pair[0], pair[1]).unwrap();
        println!(
            "{} --{}--> {}",
            g.table.label_of(pair[0]),
            kind.name(),
            g.table.label_of(pair[1])
        );
    }
}
