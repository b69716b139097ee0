//! Subcommand implementations. Each returns an [`Output`]; nothing here
//! prints.

use hnstrat::hnengine::{hn_polygon_lattice, modification_hn, Polygon};
use hnstrat::kottwitz::{enumerate_b, in_b, KottwitzError};
use hnstrat::oracle::{
    brute_dor, brute_force_b, brute_fully_hnd, brute_smallest_hnd_levi, brute_theta,
    two_rho_by_roots,
};
use hnstrat::rational::format_rational_list;
use hnstrat::strata::{
    dim_hn_bound, dim_hn_bound_two_rho, dim_newton, dims_equal_classification, dor_types,
    fully_hnd, hn_decomposable, hodge_newton_gap, hodge_newton_project, index_relations,
    is_in_b_hn, smallest_hnd_levi, smallest_hnd_levi_in, stratum_report, theta_set, wa_containment,
    IndexRow, WaVerdict,
};
use hnstrat::{
    format_rational, qi, Cocharacter, Composition, GroupDatum, HNType, IsocrystalBlocks,
    ModificationInstance, NewtonPoint, Rational, StratumReport,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Settings;
use crate::error::CliError;
use crate::output::{Output, Table};

/// Brute-force cross-checks are exponential in the rank.
const ORACLE_MAX_RANK: usize = 8;
/// Largest instance for the block-subset lattice cross-check.
const ORACLE_MAX_BLOCKS: usize = 16;

const STRICT_NOTE: &str = "the bound is <rho, mu + lambda>; the field hn_bound_two_rho \
     gives the <2rho, mu + lambda> variant";

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn list(v: &[Rational]) -> String {
    format_rational_list(v)
}

fn ints(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn header(command: &str, g: &GroupDatum, mu: &Cocharacter) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert(
        "group".into(),
        json!({ "n": g.n, "twist_degree": g.twist_degree }),
    );
    m.insert("mu_input".into(), to_json(mu));
    m.insert("mu".into(), to_json(&mu.dominant()));
    m
}

fn oracle_guard(s: &Settings, n: usize) -> Result<bool, CliError> {
    if s.oracle && n > ORACLE_MAX_RANK {
        return Err(CliError::Usage(format!(
            "--oracle supports rank at most {ORACLE_MAX_RANK}"
        )));
    }
    Ok(s.oracle)
}

fn mismatch<T: std::fmt::Debug>(what: &str, fast: T, brute: T) -> CliError {
    CliError::OracleMismatch(format!(
        "{what}: library gives {fast:?}, brute force gives {brute:?}"
    ))
}

fn group_and_mu(s: &Settings) -> Result<(GroupDatum, Cocharacter), CliError> {
    let g = s.group()?;
    let mu = s.mu(Some(&g))?;
    Ok((g, mu))
}

/// Group, mu and a class of `B(G, mu)`.
fn class_input(s: &Settings) -> Result<(GroupDatum, Cocharacter, NewtonPoint), CliError> {
    let (g, mu) = group_and_mu(s)?;
    let nu = s.nu()?;
    if nu.n() != g.n {
        return Err(CliError::Domain(format!(
            "nu has {} entries but the group has rank {}",
            nu.n(),
            g.n
        )));
    }
    if !in_b(&g, &mu, &nu)? {
        return Err(CliError::Domain(format!(
            "{nu} is not in B(G, mu) for mu = {mu}: it must satisfy the integrality \
             condition, have total {} and lie below {}",
            mu.total(),
            mu.dominant()
        )));
    }
    Ok((g, mu, nu))
}

fn check_theta(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
    fast: &[HNType],
) -> Result<(), CliError> {
    let brute = brute_theta(g, mu, nu);
    if fast != brute.as_slice() {
        return Err(mismatch(&format!("Theta at {nu}"), fast.len(), brute.len()));
    }
    Ok(())
}

fn check_dor(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
    fast: &[HNType],
) -> Result<(), CliError> {
    let brute = brute_dor(g, mu, nu);
    if fast != brute.as_slice() {
        return Err(mismatch(
            &format!("flag variety types at {nu}"),
            fast.len(),
            brute.len(),
        ));
    }
    Ok(())
}

fn check_levi(mu: &Cocharacter, nu: &NewtonPoint, fast: &Composition) -> Result<(), CliError> {
    let brute = brute_smallest_hnd_levi(mu, nu);
    if *fast != brute {
        return Err(mismatch(
            &format!("smallest decomposable Levi at {nu}"),
            fast,
            &brute,
        ));
    }
    Ok(())
}

/// Independent recomputation of the dimension pair through the sum over
/// positive roots and the box scan for `Theta`.
fn check_dims(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
    newton: Rational,
    bound: Option<Rational>,
) -> Result<(), CliError> {
    let dom: Vec<Rational> = mu.dominant().entries().iter().map(|&x| qi(x)).collect();
    let brute_newton = two_rho_by_roots(&dom) - two_rho_by_roots(nu.slopes());
    if brute_newton != newton {
        return Err(mismatch(
            &format!("dim_newton at {nu}"),
            newton,
            brute_newton,
        ));
    }
    if let Some(bound) = bound {
        let brute_bound = brute_theta(g, mu, nu)
            .iter()
            .map(|t| {
                let v: Vec<Rational> = dom
                    .iter()
                    .zip(t.lam.entries())
                    .map(|(a, &b)| a + qi(b))
                    .collect();
                two_rho_by_roots(&v) / qi(2)
            })
            .max();
        if brute_bound != Some(bound) {
            return Err(mismatch(
                &format!("dim_hn_bound at {nu}"),
                Some(bound),
                brute_bound,
            ));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TypeRow {
    levi: Composition,
    neg_lambda: Cocharacter,
    lambda: Cocharacter,
    cell_dimension: String,
}

fn type_rows(mu: &Cocharacter, types: &[HNType]) -> Vec<TypeRow> {
    types
        .iter()
        .map(|t| TypeRow {
            levi: t.levi.clone(),
            neg_lambda: t.neg_lam(),
            lambda: t.lam.clone(),
            cell_dimension: format_rational(&hnstrat::strata::cell_dimension(mu, t)),
        })
        .collect()
}

fn type_table(rows: &[TypeRow]) -> Table {
    let mut table = Table::new(&["levi", "neg_lambda", "lambda", "cell_dimension"]);
    for r in rows {
        table.push(vec![
            ints(&r.levi.parts().iter().map(|&p| p as i64).collect::<Vec<_>>()),
            ints(r.neg_lambda.entries()),
            ints(r.lambda.entries()),
            r.cell_dimension.clone(),
        ]);
    }
    table
}

#[derive(Serialize)]
struct ReportRow {
    #[serde(flatten)]
    report: StratumReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    hn_bound_two_rho: Option<String>,
}

fn report_row(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
    s: &Settings,
) -> Result<ReportRow, CliError> {
    let report = stratum_report(g, mu, nu)?;
    if s.oracle {
        check_theta(g, mu, nu, &report.theta)?;
        check_dor(g, mu, nu, &dor_types(g, mu, nu)?)?;
        check_levi(mu, nu, &smallest_hnd_levi(mu, nu)?)?;
        check_dims(g, mu, nu, report.dim_newton, report.dim_hn_bound)?;
    }
    let hn_bound_two_rho = match (s.strict_paper, report.dim_hn_bound) {
        (true, Some(_)) => Some(format_rational(&dim_hn_bound_two_rho(g, mu, nu)?)),
        _ => None,
    };
    Ok(ReportRow {
        report,
        hn_bound_two_rho,
    })
}

fn report_headers(strict: bool) -> Vec<&'static str> {
    let mut h = vec![
        "nu",
        "in_b_hn",
        "theta_size",
        "hnd_levi",
        "dim_newton",
        "dim_hn_bound",
        "dims_equal",
        "dor_nonempty",
    ];
    if strict {
        h.push("hn_bound_two_rho");
    }
    h
}

fn report_cells(r: &ReportRow, strict: bool) -> Vec<String> {
    let rep = &r.report;
    let mut cells = vec![
        list(rep.nu.slopes()),
        rep.in_b_hn.to_string(),
        rep.theta.len().to_string(),
        rep.hnd_levi
            .as_ref()
            .map_or_else(|| "indecomposable".into(), |c| c.to_string()),
        format_rational(&rep.dim_newton),
        rep.dim_hn_bound
            .map_or_else(String::new, |b| format_rational(&b)),
        opt(&rep.dims_equal),
        rep.dor_nonempty.to_string(),
    ];
    if strict {
        cells.push(r.hn_bound_two_rho.clone().unwrap_or_default());
    }
    cells
}

fn all_classes(
    g: &GroupDatum,
    mu: &Cocharacter,
    s: &Settings,
) -> Result<Vec<NewtonPoint>, CliError> {
    let all = enumerate_b(g, mu)?;
    if oracle_guard(s, g.n)? {
        let brute = brute_force_b(mu);
        if all != brute {
            return Err(mismatch("B(G, mu)", all.len(), brute.len()));
        }
    }
    Ok(all)
}

pub fn enumerate(s: &Settings) -> Result<Output, CliError> {
    let (g, mu) = group_and_mu(s)?;
    let classes = all_classes(&g, &mu, s)?;
    let rows: Vec<ReportRow> = classes
        .par_iter()
        .map(|nu| report_row(&g, &mu, nu, s))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&report_headers(s.strict_paper));
    for r in &rows {
        table.push(report_cells(r, s.strict_paper));
    }
    let mut json = header("enumerate", &g, &mu);
    json.insert("count".into(), json!(rows.len()));
    if s.strict_paper {
        json.insert("note".into(), json!(STRICT_NOTE));
    }
    json.insert("classes".into(), to_json(&rows));
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

pub fn theta(s: &Settings) -> Result<Output, CliError> {
    let (g, mu, nu) = class_input(s)?;
    oracle_guard(s, g.n)?;
    let types = theta_set(&g, &mu, &nu)?;
    if s.oracle {
        check_theta(&g, &mu, &nu, &types)?;
    }
    let rows = type_rows(&mu, &types);
    let mut json = header("theta", &g, &mu);
    json.insert("nu".into(), to_json(&nu));
    json.insert("levi".into(), to_json(&nu.centralizer()));
    json.insert(
        "levi_allowed".into(),
        json!(g.levi_allowed(&nu.centralizer())),
    );
    json.insert("count".into(), json!(rows.len()));
    json.insert("types".into(), to_json(&rows));
    Ok(Output {
        json: Value::Object(json),
        table: type_table(&rows),
    })
}

pub fn dims(s: &Settings) -> Result<Output, CliError> {
    let (g, mu, nu) = class_input(s)?;
    oracle_guard(s, g.n)?;
    let newton = dim_newton(&mu, &nu)?;
    let bound = dim_hn_bound(&g, &mu, &nu)?;
    let equal = dims_equal_classification(&g, &mu, &nu)?;
    if s.oracle {
        check_dims(&g, &mu, &nu, newton, Some(bound))?;
    }
    let mut json = header("dims", &g, &mu);
    json.insert("nu".into(), to_json(&nu));
    json.insert("newton".into(), json!(format_rational(&newton)));
    json.insert("hn_bound".into(), json!(format_rational(&bound)));
    json.insert("equal".into(), json!(equal));
    json.insert("hnd_levi".into(), to_json(&smallest_hnd_levi(&mu, &nu)?));
    let mut headers = vec!["nu", "newton", "hn_bound", "equal"];
    let mut row = vec![
        list(nu.slopes()),
        format_rational(&newton),
        format_rational(&bound),
        equal.to_string(),
    ];
    if s.strict_paper {
        let two = format_rational(&dim_hn_bound_two_rho(&g, &mu, &nu)?);
        json.insert("hn_bound_two_rho".into(), json!(two));
        json.insert("note".into(), json!(STRICT_NOTE));
        headers.push("hn_bound_two_rho");
        row.push(two);
    }
    let mut table = Table::new(&headers);
    table.push(row);
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

pub fn hnd(s: &Settings) -> Result<Output, CliError> {
    let (g, mu, nu) = class_input(s)?;
    oracle_guard(s, g.n)?;
    let gap = hodge_newton_gap(&mu, &nu)?;
    if s.oracle {
        check_levi(&mu, &nu, &smallest_hnd_levi(&mu, &nu)?)?;
    }
    let smallest = smallest_hnd_levi_in(&g, &mu, &nu)?;
    let mut json = header("hnd", &g, &mu);
    json.insert("nu".into(), to_json(&nu));
    json.insert(
        "gap".into(),
        json!(gap.iter().map(format_rational).collect::<Vec<_>>()),
    );
    json.insert("smallest_levi".into(), to_json(&smallest));
    json.insert("decomposable".into(), json!(!smallest.is_whole()));
    let mut headers = vec!["nu", "gap", "smallest_levi", "decomposable"];
    let mut row = vec![
        list(nu.slopes()),
        list(&gap),
        smallest.to_string(),
        (!smallest.is_whole()).to_string(),
    ];
    if let Some(parts) = s.levi() {
        let levi = Composition::new(parts.to_vec())?;
        let ok = hn_decomposable(&mu, &nu, &levi)?;
        json.insert("levi".into(), to_json(&levi));
        json.insert("decomposable_for_levi".into(), json!(ok));
        headers.extend(["levi", "decomposable_for_levi"]);
        row.extend([levi.to_string(), ok.to_string()]);
    }
    let mut table = Table::new(&headers);
    table.push(row);
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

pub fn fully_hnd_cmd(s: &Settings) -> Result<Output, CliError> {
    let (g, mu) = group_and_mu(s)?;
    let classes = all_classes(&g, &mu, s)?;
    let result = fully_hnd(&g, &mu)?;
    let levis: Vec<(NewtonPoint, Composition)> = classes
        .par_iter()
        .filter(|nu| !nu.is_basic())
        .map(|nu| Ok((nu.clone(), smallest_hnd_levi_in(&g, &mu, nu)?)))
        .collect::<Result<_, CliError>>()?;
    if s.oracle {
        if g.is_split() {
            let (holds, witness) = brute_fully_hnd(&mu);
            if (holds, &witness) != (result.holds, &result.witness) {
                return Err(mismatch(
                    "fully Hodge-Newton decomposable",
                    (result.holds, &result.witness),
                    (holds, &witness),
                ));
            }
        }
        for (nu, _) in &levis {
            check_levi(&mu, nu, &smallest_hnd_levi(&mu, nu)?)?;
        }
    }
    let mut table = Table::new(&["nu", "smallest_levi", "decomposable"]);
    let mut rows = Vec::new();
    for (nu, levi) in &levis {
        table.push(vec![
            list(nu.slopes()),
            levi.to_string(),
            (!levi.is_whole()).to_string(),
        ]);
        rows.push(json!({ "nu": to_json(nu), "smallest_levi": to_json(levi), "decomposable": !levi.is_whole() }));
    }
    let mut json = header("fully-hnd", &g, &mu);
    json.insert("holds".into(), json!(result.holds));
    json.insert("witness".into(), to_json(&result.witness));
    json.insert("non_basic".into(), Value::Array(rows));
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

pub fn dor(s: &Settings) -> Result<Output, CliError> {
    let (g, mu, nu) = class_input(s)?;
    oracle_guard(s, g.n)?;
    let types = dor_types(&g, &mu, &nu)?;
    if s.oracle {
        check_dor(&g, &mu, &nu, &types)?;
    }
    let in_hn = is_in_b_hn(&g, &mu, &nu)?.is_some();
    let rows = type_rows(&mu, &types);
    let mut json = header("dor", &g, &mu);
    json.insert("nu".into(), to_json(&nu));
    json.insert("dor_nonempty".into(), json!(!types.is_empty()));
    json.insert("in_b_hn".into(), json!(in_hn));
    json.insert("types".into(), to_json(&rows));
    Ok(Output {
        json: Value::Object(json),
        table: type_table(&rows),
    })
}

fn polygon_json(p: &Polygon) -> Value {
    json!({
        "rank": p.rank(),
        "degree": format_rational(&p.degree()),
        "slopes": p.slopes().iter().map(format_rational).collect::<Vec<_>>(),
        "vertices": to_json(&p.vertices()),
    })
}

pub fn hn_polygon(s: &Settings) -> Result<Output, CliError> {
    let inst = ModificationInstance::from_triples(&s.instance()?)?;
    let poly = modification_hn(&inst);
    if s.oracle {
        if inst.blocks().len() > ORACLE_MAX_BLOCKS {
            return Err(CliError::Usage(format!(
                "--oracle supports at most {ORACLE_MAX_BLOCKS} blocks"
            )));
        }
        let brute = hn_polygon_lattice(&inst.block_subset_lattice()?);
        if brute != poly {
            return Err(mismatch("HN polygon", poly.to_string(), brute.to_string()));
        }
    }
    let mut json = Map::new();
    json.insert("command".into(), json!("hn-polygon"));
    json.insert("instance".into(), to_json(&inst.blocks()));
    json.insert("polygon".into(), polygon_json(&poly));
    if let Some(parts) = s.levi() {
        let levi = Composition::new(parts.to_vec())?;
        let proj = hodge_newton_project(&inst, &levi)?;
        let pieces: Vec<Value> = proj.piece_polygons.iter().map(polygon_json).collect();
        json.insert("levi".into(), to_json(&levi));
        json.insert("pieces".into(), Value::Array(pieces));
    }
    let mut table = Table::new(&["rank", "degree"]);
    for v in poly.vertices() {
        table.push(vec![v.rank.to_string(), format_rational(&v.deg)]);
    }
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

pub fn wa(s: &Settings) -> Result<Output, CliError> {
    let b = IsocrystalBlocks::from_pairs(&s.b()?)?;
    if !b.is_basic() {
        return Err(KottwitzError::NonBasic(format!("{:?}", s.b()?)).into());
    }
    let g = GroupDatum::new(b.rank(), b.degree())?;
    if s.has_group() {
        let given = s.group()?;
        if given.n != g.n {
            return Err(CliError::Domain(format!(
                "b has rank {} but the group has rank {}",
                g.n, given.n
            )));
        }
    }
    let mu = s.mu(Some(&g))?;
    let nu = s.nu()?;
    let report = wa_containment(&b, &mu, &nu)?;
    let mut json = header("wa", &g, &mu);
    json.insert(
        "b".into(),
        json!(s
            .b()?
            .iter()
            .map(|(d, h)| format!("{d}/{h}"))
            .collect::<Vec<_>>()),
    );
    json.insert("nu".into(), to_json(&nu));
    json.insert("verdict".into(), to_json(&report.verdict));
    json.insert("ledger".into(), to_json(&report.ledger));
    json.insert("survivors".into(), to_json(&report.survivors));
    let table = match report.verdict {
        WaVerdict::Contained => {
            let mut t = Table::new(&["levi", "mu_split", "reduction", "killed_by", "eta_tuples"]);
            for r in &report.ledger {
                t.push(vec![
                    r.levi.to_string(),
                    split_cell(&r.mu_split),
                    list(r.reduction.entries()),
                    opt(&r.killed_by),
                    r.eta_tuples.to_string(),
                ]);
            }
            t
        }
        WaVerdict::Inconclusive => {
            let mut t = Table::new(&["levi", "mu_split", "reduction", "eta"]);
            for sc in &report.survivors {
                let eta: Vec<String> = sc.eta.iter().map(|e| list(e.slopes())).collect();
                t.push(vec![
                    sc.levi.to_string(),
                    split_cell(&sc.mu_split),
                    list(sc.reduction.entries()),
                    eta.join(" | "),
                ]);
            }
            t
        }
    };
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}

fn split_cell(split: &[Vec<i64>]) -> String {
    split
        .iter()
        .map(|b| ints(b))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn points_cell(v: &[NewtonPoint]) -> String {
    v.iter()
        .map(|p| list(p.slopes()))
        .collect::<Vec<_>>()
        .join(" ; ")
}

#[derive(Serialize)]
struct FullRow {
    #[serde(flatten)]
    row: ReportRow,
    newton_to_hn: Vec<NewtonPoint>,
    hn_to_newton: Vec<NewtonPoint>,
    newton_to_hn_refined: Vec<NewtonPoint>,
}

pub fn report(s: &Settings) -> Result<Output, CliError> {
    let (g, mu) = group_and_mu(s)?;
    let index: Vec<IndexRow> = if s.has_nu() {
        let (_, _, nu) = class_input(s)?;
        index_relations(&g, &mu)?
            .into_iter()
            .filter(|r| r.nu == nu)
            .collect()
    } else {
        all_classes(&g, &mu, s)?;
        index_relations(&g, &mu)?
    };
    oracle_guard(s, g.n)?;
    let rows: Vec<FullRow> = index
        .into_par_iter()
        .map(|ix| {
            Ok(FullRow {
                row: report_row(&g, &mu, &ix.nu, s)?,
                newton_to_hn: ix.newton_to_hn,
                hn_to_newton: ix.hn_to_newton,
                newton_to_hn_refined: ix.newton_to_hn_refined,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let mut headers = report_headers(s.strict_paper);
    headers.extend(["newton_to_hn", "hn_to_newton", "newton_to_hn_refined"]);
    let mut table = Table::new(&headers);
    for r in &rows {
        let mut cells = report_cells(&r.row, s.strict_paper);
        cells.extend([
            points_cell(&r.newton_to_hn),
            points_cell(&r.hn_to_newton),
            points_cell(&r.newton_to_hn_refined),
        ]);
        table.push(cells);
    }
    let mut json = header("report", &g, &mu);
    json.insert("count".into(), json!(rows.len()));
    if s.strict_paper {
        json.insert("note".into(), json!(STRICT_NOTE));
    }
    json.insert("classes".into(), to_json(&rows));
    Ok(Output {
        json: Value::Object(json),
        table,
    })
}
