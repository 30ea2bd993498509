//! Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request};
use csa_core::fixtures;
use csa_core::order::{analyze, enumerate_semiorder_chains, rank, OrderClass, Ranking};
use csa_core::store::SessionStore;
use csa_core::trisection::{statistical_thresholds, trisect};
use csa_core::weighting::{consistency, principal_eigen, weigh_hierarchy, ComparisonMatrix, Hierarchy, WeightVector};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{label} = {got:.6}, want {want} ± {tol}")
    })
}

fn reproduce_table(
    m: &ComparisonMatrix,
    want: &[f64],
    lambda: f64,
    ratio: f64,
) -> Result<(WeightVector, String), String> {
    let e = principal_eigen(m).map_err(|e| e.to_string())?;
    let c = consistency(m, &e);
    for ((id, got), w) in e.weights.iter().zip(want) {
        within(&format!("w({id})"), got, *w, 0.005)?;
    }
    within("λmax", c.lambda_max, lambda, 0.01)?;
    within("C.R. (%)", c.consistency_ratio * 100.0, ratio * 100.0, 0.05)?;
    ensure(c.acceptable, || "matrix judged unacceptable".into())?;
    let detail = format!(
        "λmax = {:.4}, C.R. = {:.3}%, weights {}",
        c.lambda_max,
        c.consistency_ratio * 100.0,
        e.weights
            .values()
            .map(|x| format!("{x:.3}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok((e.weights, detail))
}

fn cluster_table() -> Outcome {
    let m = fixtures::cluster_matrix();
    let start = Instant::now();
    let result = weigh_hierarchy(&Hierarchy::flat(m.clone()));
    let elapsed = start.elapsed();
    result.map_err(|e| e.to_string())?;
    let (_, detail) = reproduce_table(
        &m,
        &fixtures::CLUSTER_WEIGHTS,
        fixtures::CLUSTER_LAMBDA_MAX,
        fixtures::CLUSTER_CONSISTENCY_RATIO,
    )?;
    ensure(elapsed < Duration::from_millis(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{detail}, {elapsed:?}"))
}

fn level_table() -> Outcome {
    let (_, detail) = reproduce_table(
        &fixtures::level_matrix(),
        &fixtures::LEVEL_WEIGHTS,
        fixtures::LEVEL_LAMBDA_MAX,
        fixtures::LEVEL_CONSISTENCY_RATIO,
    )?;
    Ok(detail)
}

fn linear_example() -> Outcome {
    let (c, r) = rank(&fixtures::linear_relation());
    ensure(c.class == OrderClass::Linear, || format!("class {}", c.class))?;
    let r = r.ok_or("no ranking")?.to_string();
    ensure(r == "d3 > d1 > d5 > d4 > d2", || format!("ranked {r}"))?;
    Ok(format!("LINEAR, {r}"))
}

fn weak_example() -> Outcome {
    let (c, r) = rank(&fixtures::weak_relation());
    ensure(c.class == OrderClass::Weak, || format!("class {}", c.class))?;
    let Some(Ranking::RankedPartition { blocks }) = r else {
        return Err("no ranked partition".into());
    };
    let got: Vec<Vec<&str>> = blocks.iter().map(|b| b.iter().map(|d| d.as_str()).collect()).collect();
    ensure(got == [vec!["d1", "d2"], vec!["d3"], vec!["d4", "d5"]], || {
        format!("blocks {got:?}")
    })?;
    Ok("WEAK, {d1,d2} > {d3} > {d4,d5}".into())
}

fn semiorder_example() -> Outcome {
    let rel = fixtures::semiorder_relation();
    let c = analyze(&rel);
    ensure(c.class == OrderClass::Semiorder, || format!("class {}", c.class))?;
    let Ranking::ChainSet { chains } = enumerate_semiorder_chains(&rel).map_err(|e| e.to_string())? else {
        return Err("not a chain set".into());
    };
    let mut got: Vec<String> = chains.iter().map(ToString::to_string).collect();
    got.sort();
    let mut want = ["d1 > d2 > d4 > d5", "d1 > d2 ∼ d3 > d5", "d1 > d3 ∼ d4 > d5"];
    want.sort();
    ensure(got == want, || format!("chains {got:?}"))?;
    Ok(format!("SEMIORDER, {}", got.join(" | ")))
}

fn property_suite() -> Outcome {
    let cases = props::CASES;
    ensure(cases >= 200, || format!("only {cases} cases"))?;
    let start = Instant::now();
    for p in props::ALL {
        (p.run)(cases).map_err(|e| format!("{}: {e}", p.name))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} properties × {cases} cases in {:.2?}",
        props::ALL.len(),
        elapsed
    ))
}

fn statistical_oracle() -> Outcome {
    let w = &fixtures::CLUSTER_WEIGHTS;
    let n = w.len() as f64;
    let mu = w.iter().sum::<f64>() / n;
    let sigma = (w.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / n).sqrt();
    let (h, l) = (mu + sigma, mu - sigma);

    let got = statistical_thresholds(w, 1.0, 1.0).map_err(|e| e.to_string())?;
    for (label, g, o) in [
        ("μ", got.mu, mu),
        ("σ", got.sigma, sigma),
        ("h", got.h, h),
        ("l", got.l, l),
    ] {
        within(label, g, o, 1e-9)?;
    }
    let values = WeightVector::from_pairs(fixtures::CLUSTERS.iter().copied().zip(w.iter().copied()));
    let t = trisect(&values, got.h, got.l).map_err(|e| e.to_string())?;
    let high: Vec<&str> = t.high.iter().map(|d| d.as_str()).collect();
    ensure(high == ["D6"], || format!("H = {high:?}"))?;
    Ok(format!(
        "μ = {mu:.4}, σ = {sigma:.4}, h = {h:.4}, l = {l:.4}, H = {{D6}}"
    ))
}

async fn api_weights(matrix: &ComparisonMatrix) -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = SessionStore::open(dir.path()).map_err(|e| e.to_string())?;
    let app = csa::api::router(Arc::new(store), &[]);
    let call = |method: Method, uri: String, body: Value| {
        let app = app.clone();
        async move {
            let body = if body.is_null() {
                Body::empty()
            } else {
                Body::from(body.to_string())
            };
            let req = Request::builder().method(method).uri(uri).body(body).unwrap();
            let res = app.oneshot(req).await.map_err(|e| e.to_string())?;
            let status = res.status();
            let bytes = res.into_body().collect().await.map_err(|e| e.to_string())?.to_bytes();
            let text = String::from_utf8(bytes.to_vec()).map_err(|e| e.to_string())?;
            if status.is_success() {
                Ok(text)
            } else {
                Err(format!("{status}: {text}"))
            }
        }
    };
    let created = call(
        Method::POST,
        "/sessions".into(),
        json!({ "disorders": matrix.labels() }),
    )
    .await?;
    let id = serde_json::from_str::<Value>(&created).map_err(|e| e.to_string())?["id"]
        .as_str()
        .ok_or("no id")?
        .to_owned();
    let hierarchy = Hierarchy::flat(matrix.clone());
    call(
        Method::PUT,
        format!("/sessions/{id}/hierarchy"),
        json!({ "expected_revision": 1, "hierarchy": hierarchy }),
    )
    .await?;
    call(Method::GET, format!("/sessions/{id}/weights"), Value::Null).await
}

fn parity() -> Outcome {
    let file = format!("{}/tests/data/clusters.json", env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(env!("CARGO_BIN_EXE_csa"))
        .args(["weigh", &file])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let cli = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let parsed: ComparisonMatrix =
        serde_json::from_str(&std::fs::read_to_string(&file).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(parsed == fixtures::cluster_matrix(), || {
        "fixture file differs from the table".into()
    })?;
    let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    let api = rt.block_on(api_weights(&parsed))?;
    ensure(cli == api, || format!("CLI and API bodies differ:\n{cli}\n---\n{api}"))?;
    Ok(format!("{} identical bytes", cli.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("six-cluster matrix weights", cluster_table),
        ("five-level intensity scale weights", level_table),
        ("linear order ranking", linear_example),
        ("weak order ranking", weak_example),
        ("semiorder chains", semiorder_example),
        ("property suite", property_suite),
        ("statistical trisection oracle", statistical_oracle),
        ("CLI/API parity", parity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
