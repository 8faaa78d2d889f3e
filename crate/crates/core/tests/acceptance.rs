//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! target exits non-zero if any gated criterion fails. Runs without the
//! libtest harness so the lines are never captured.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mcskel_core::cost::{run_strategy, Strategy};
use mcskel_core::oracle::PROP4_CAP;
use mcskel_core::{
    classify, classify_brute_force, is_essentially_irreducible, lift, prop4_check,
    skeleton_direct, skeleton_pruned, BinaryMatrix, Classification, EssentialMethod,
    IrreducibleReason, SupportKernel,
};

use common::{example4, random_suite, tree_suite};

struct Outcome {
    id: u32,
    name: &'static str,
    gated: bool,
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(id: u32, name: &'static str) -> Self {
        Outcome { id, name, gated: true, failures: Vec::new(), detail: String::new() }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            eprintln!("  criterion {}: {msg}", self.id);
        }
        self.failures.push(msg);
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn print(&self) -> bool {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let tag = if self.gated { "" } else { " (reported)" };
        println!(
            "criterion {}: {status}{tag} - {} [{}{}]",
            self.id,
            self.name,
            self.detail,
            if self.failures.is_empty() {
                String::new()
            } else {
                format!("; {} failures", self.failures.len())
            }
        );
        self.failures.is_empty() || !self.gated
    }
}

fn class_sets_skeleton(c: &Classification) -> BTreeSet<(Vec<usize>, usize)> {
    c.classes
        .iter()
        .map(|rc| {
            let mut m = rc.members.clone().expect("members listed below the cap");
            m.sort_unstable();
            (m, rc.period)
        })
        .collect()
}

fn criterion1() -> Outcome {
    let mut o = Outcome::new(1, "worked example");
    let start = Instant::now();
    let kernel = example4();
    let c = classify(&kernel).unwrap();
    let elapsed = start.elapsed();
    let alphabet = kernel.alphabet();

    let got: BTreeSet<(String, Vec<u8>)> = c
        .skeleton
        .words()
        .iter()
        .map(|w| (alphabet.render(w.word.symbols()), w.support.as_ints()))
        .collect();
    let want: BTreeSet<(String, Vec<u8>)> = [
        ("00", vec![1, 1]),
        ("10", vec![1, 0]),
        ("01", vec![1, 1]),
        ("011", vec![1, 1]),
        ("111", vec![1, 0]),
    ]
    .into_iter()
    .map(|(w, s)| (w.to_string(), s))
    .collect();
    o.check(got == want, || format!("skeleton {got:?}"));
    o.check(c.skeleton_order() == 3, || format!("K = {}", c.skeleton_order()));
    o.check(c.essentially_irreducible, || "not essentially irreducible".into());
    o.check(!c.irreducibility.irreducible, || "reported irreducible".into());
    o.check(
        c.irreducibility.reason.as_str() == "Prop 2 contraposition",
        || format!("reason {}", c.irreducibility.reason),
    );
    o.check(c.class_count() == 1, || format!("N = {}", c.class_count()));
    o.check(
        c.classes.first().map(|rc| rc.period) == Some(1),
        || "period is not 1".into(),
    );
    o.check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    o.detail = format!("K=3, N=1, period 1 in {elapsed:?}");
    o
}

#[derive(Default)]
struct PeriodTally {
    divisibility: Vec<String>,
    window: Vec<String>,
    eventual: Vec<String>,
}

fn restrict(m: &BinaryMatrix, class: &[usize]) -> BinaryMatrix {
    // A closed class is an SCC, so every closed walk through one of its
    // states stays inside it: powers of the restriction give the diagonal.
    BinaryMatrix::from_rows(
        &class
            .iter()
            .map(|&i| class.iter().map(|&j| m.get(i, j) as u8).collect::<Vec<u8>>())
            .collect::<Vec<_>>(),
    )
}

fn period_check(m: &BinaryMatrix, class: &[usize], d: usize, label: &str, tally: &mut PeriodTally) {
    let sub = restrict(m, class);
    let size = class.len();
    let mut p = sub.clone();
    for n in 1..=4 * size {
        for i in 0..size {
            if p.get(i, i) && n % d != 0 {
                tally
                    .divisibility
                    .push(format!("{label}: M^{n}({0},{0}) = 1 with period {d}", class[i]));
            }
        }
        p = p.bool_multiply(&sub).unwrap();
    }
    let q = sub.pow(d);
    let diag_gaps = |from: usize, to: usize, out: &mut Vec<String>| {
        let mut qn = q.pow(from);
        for n in from..=to {
            for i in 0..size {
                if !qn.get(i, i) {
                    out.push(format!("{label}: M^{}({1},{1}) = 0 with period {d}", n * d, class[i]));
                }
            }
            qn = qn.bool_multiply(&q).unwrap();
        }
    };
    diag_gaps(size, 2 * size, &mut tally.window);
    // M^d on one cyclic subclass is primitive on at most `size` states, so
    // its exponent is at most (size - 1)^2 + 1.
    let n0 = (size - 1) * (size - 1) + 1;
    diag_gaps(n0, n0 + size, &mut tally.eventual);
}

fn record_matrix(c4: &mut Outcome, tally: &mut PeriodTally, label: &str, c: &Classification) {
    let dense = c.matrix.dense();
    let all_ones = dense.reach_sum().has_all_ones_column();
    let unique = c.decomposition.closed_count() == 1;
    c4.check(all_ones == unique, || {
        format!("{label}: all-ones column {all_ones}, closed classes {}", c.decomposition.closed_count())
    });
    for rc in &c.classes {
        period_check(&dense, &rc.closed_class, rc.period, label, tally);
    }
}

/// The window `[|class|, 2|class|]` for `M^{nd}(i,i) = 1` does not hold for
/// every closed class: cycles of lengths 3 and 4 through a state give period
/// 1 on 4 states, yet no closed walk of length 5. That part is reported, not
/// gated; eventual positivity past the primitive exponent bound is gated.
fn criterion7(tally: PeriodTally, n: usize) -> Vec<Outcome> {
    let mut gated = Outcome::new(7, "period property: d | n on the diagonal, M^{nd}(i,i) = 1 eventually");
    for f in tally.divisibility.into_iter().chain(tally.eventual) {
        gated.fail(f);
    }
    gated.detail = format!("closed classes of {n} skeleton matrices");
    let mut window = Outcome::new(7, "period property: M^{nd}(i,i) = 1 for n in [|class|, 2|class|]");
    window.gated = false;
    window.detail = format!(
        "{} diagonal gaps in the window; the window claim fails for cycle lengths 3 and 4 on 4 states",
        tally.window.len()
    );
    window.failures = tally.window;
    vec![gated, window]
}

fn main() {
    let mut results = vec![criterion1()];

    let suite = random_suite();
    let mut c2 = Outcome::new(2, "skeleton classification equals lifted-chain oracle");
    let mut c3 = Outcome::new(3, "pruned skeleton equals direct skeleton");
    let mut c4 = Outcome::new(4, "all-ones column iff unique closed class");
    let mut c5 = Outcome::new(5, "irreducibility shortcuts are sound");
    let mut c6 = Outcome::new(6, "lifted power-sum check equals skeleton check");
    let mut tally = PeriodTally::default();

    let mut kernels: Vec<(String, SupportKernel)> = vec![("example".into(), example4())];
    kernels.extend(suite.into_iter().map(|(p, k)| {
        (format!("|A|={} m={} q={} seed={}", p.alphabet_size, p.order, p.rate, p.seed), k)
    }));
    let full_tables = kernels.len() - 1;
    kernels.extend(
        tree_suite(500)
            .into_iter()
            .enumerate()
            .map(|(i, k)| (format!("context tree #{i}"), k)),
    );

    let start = Instant::now();
    let mut prop3 = 0;
    let mut prop4_checked = 0;
    let mut k_mid = 0;
    for (label, kernel) in &kernels {
        let c = classify(kernel).unwrap();
        let chain = lift(kernel).unwrap();
        let bf = classify_brute_force(&chain);

        if label != "example" {
            let oracle: BTreeSet<(Vec<usize>, usize)> =
                bf.classes.iter().map(|lc| (lc.members.clone(), lc.period)).collect();
            let ours = class_sets_skeleton(&c);
            c2.check(c.class_count() == bf.class_count() && ours == oracle, || {
                format!("{label}: N {} vs {}", c.class_count(), bf.class_count())
            });
        }

        let pruned = skeleton_pruned(kernel);
        let direct = skeleton_direct(kernel).unwrap();
        c3.check(
            pruned == direct && pruned.order() == direct.order(),
            || format!("{label}: pruned K={} direct K={}", pruned.order(), direct.order()),
        );

        record_matrix(&mut c4, &mut tally, label, &c);

        let k = c.skeleton_order();
        if k > 0 && k < kernel.order() {
            k_mid += 1;
        }
        c5.check(!bf.irreducible() || k == 0 || k == kernel.order(), || {
            format!("{label}: oracle irreducible with K = {k}")
        });
        if c.irreducibility.reason == IrreducibleReason::Prop3 {
            prop3 += 1;
            c5.check(!bf.irreducible(), || format!("{label}: short prohibiting word on an irreducible chain"));
        }

        if chain.state_count() <= PROP4_CAP {
            prop4_checked += 1;
            let lifted = prop4_check(&chain).unwrap();
            let ours = is_essentially_irreducible(kernel, EssentialMethod::Scc).unwrap();
            c6.check(lifted == ours, || format!("{label}: lifted {lifted}, skeleton {ours}"));
        }
    }
    let elapsed = start.elapsed();
    let n = kernels.len();
    c2.check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"));
    c2.detail = format!(
        "{full_tables} random full-table kernels + {} context trees in {elapsed:.2?}",
        n - 1 - full_tables
    );
    c3.detail = format!("{n} kernels");
    c4.detail = format!("{n} skeleton matrices");
    c5.detail = format!("{n} kernels, {k_mid} with 0<K<m, {prop3} shortcut firings");
    c6.detail = format!("{prop4_checked} kernels within the dense cap");
    results.extend([c2, c3, c4, c5, c6]);
    results.extend(criterion7(tally, n));

    let kernel = example4();
    let naive = run_strategy(&kernel, Strategy::NaivePowerSum).unwrap();
    let fast = run_strategy(&kernel, Strategy::SkeletonTarjan).unwrap();
    let ratio = naive.ops.total() as f64 / fast.ops.total().max(1) as f64;
    let mut c8 = Outcome::new(8, "operation-count advantage on the example");
    c8.gated = false;
    c8.check(naive.essentially_irreducible == fast.essentially_irreducible, || {
        "strategies disagree".into()
    });
    c8.check(ratio >= 10.0, || format!("ratio {ratio:.1}"));
    c8.detail = format!(
        "{} ops ({} states) vs {} ops ({} states), ratio {ratio:.0}x",
        naive.ops.total(),
        naive.states,
        fast.ops.total(),
        fast.states
    );
    results.push(c8);

    let mut all = true;
    for r in &results {
        all &= r.print();
    }
    if !all {
        eprintln!("acceptance criteria failed");
        std::process::exit(1);
    }
}
