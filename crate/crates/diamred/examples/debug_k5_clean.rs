use diamred::graph::Direction;
use diamred::kov::{augment_all_ones, decide, BitVec, KovAnswer, OvInstance};
use diamred::reduction::{general, witness_pair, BuildOptions};

fn main() {
    // clean YES at k = 5: v_j = all-ones except position j
    let mut vs = vec![];
    for j in 0..5 {
        let mut v = BitVec::ones(5);
        v.set(j, false);
        vs.push(v);
    }
    let inst = augment_all_ones(&OvInstance::new(vs, 5).unwrap());
    let KovAnswer::Yes(w) = decide(&inst) else { panic!() };
    println!("witness {w:?}");
    let mut opts = BuildOptions::default();
    opts.materialize = false;
    opts.limits.max_arcs = 10_000_000_000;
    let g = general::build(&inst, 5, &opts).unwrap();
    let (a, b) = witness_pair(&inst, &g.table, &w).unwrap();
    let dist = g.grouped.bfs(a, Direction::Forward).unwrap();
    println!("k=5 clean: d(alpha, beta) = {} (paper claims >= 9)", dist[b as usize]);
    // walk back from beta using reverse distances-to-beta
    let to_beta = g.grouped.bfs(b, Direction::Reverse).unwrap();
    let mut cur = a;
    while cur != b {
        let dc = to_beta[cur as usize];
        // neighbors: sparse row plus group mates
        let mut next = None;
        for &w in g.grouped.sparse.out(cur) {
            if to_beta[w as usize] + 1 == dc {
                next = Some((w, "sparse"));
                break;
            }
        }
        if next.is_none() {
            'outer: for gr in &g.grouped.groups {
                let (xa, xb) = match gr {
                    diamred::graph::Group::Clique(r) => (r.clone(), r.clone()),
                    diamred::graph::Group::Biclique(x, y) => (x.clone(), y.clone()),
                };
                let sides = [(xa.clone(), xb.clone()), (xb, xa)];
                for (from, to) in sides {
                    if from.contains(&cur) {
                        for w in to.clone() {
                            if w != cur && to_beta[w as usize] + 1 == dc {
                                next = Some((w, "coord-group"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        let (w, how) = next.expect("path step");
        println!("{}  --[{}]-->  {}", g.table.label_of(cur), how, g.table.label_of(w));
        cur = w;
    }
}
