use floorcount::{
    catalan, closed_form_cnl, closed_form_kl, countable_multisets, family_breakdown, kl_codims,
    line_floor_projection, oracle_line_count, validate_query, verify_maximality, CountValue,
    Degree, DiagramEnumerator, ExactCounter, NormalizedQuery, ReducibleQuery, Status,
};

use crate::output::{
    Check, Contribution, DiagramEntry, Maximality, OutputRecord, QueryEcho, Table,
};
use crate::{
    CountArgs, EnumerateArgs, Failure, GroupBy, Method, QueryArgs, ReducibleArgs, TableArgs,
    TableKind, VerifyArgs,
};

type Outcome = Result<String, Failure>;

fn echo(query: &QueryArgs) -> QueryEcho {
    QueryEcho {
        degree: Some(query.degree),
        dim: query.dim,
        codims: Some(query.codims.0.clone()),
        ..QueryEcho::default()
    }
}

fn invariant(
    counter: &ExactCounter,
    q: &NormalizedQuery,
    raw: &[i64],
) -> Result<CountValue, Failure> {
    let n = i64::from(q.ambient_dim());
    Ok(match q.degree() {
        Degree::Line => counter.count_lines(n, raw)?,
        Degree::Conic => counter.count_conics(n, raw)?,
    })
}

fn finish(record: OutputRecord, format: crate::Format) -> Outcome {
    let text = record.render(format);
    if record.all_checks_agree() {
        Ok(text)
    } else {
        for c in record.checks.iter().filter(|c| !c.agrees) {
            eprintln!(
                "disagreement: {} gives {}, recursion gives {}",
                c.name, c.value, record.result
            );
        }
        if let Some(m) = record.maximality.as_ref().filter(|m| !m.maximal) {
            eprintln!(
                "disagreement: invariant {} but {} distinct solutions",
                m.invariant, m.distinct_solutions
            );
        }
        Err(Failure::Inconsistent(text))
    }
}

fn check(name: &str, value: CountValue, expected: &CountValue) -> Check {
    Check {
        name: name.to_string(),
        agrees: &value == expected,
        value: value.to_string(),
    }
}

fn maximality_block(
    counter: &ExactCounter,
    d: i64,
    n: i64,
    codims: &[i64],
) -> Result<Maximality, Failure> {
    let report = verify_maximality(counter, &DiagramEnumerator::new(), d, n, codims)?;
    Ok(Maximality {
        invariant: report.invariant.to_string(),
        distinct_solutions: report.distinct_solutions.to_string(),
        real_lower_bound: report.real_lower_bound.to_string(),
        maximal: report.maximal,
    })
}

pub fn count(counter: &ExactCounter, args: &CountArgs) -> Outcome {
    let query = &args.query;
    let raw = &query.codims.0;
    let q = validate_query(query.degree, query.dim, raw)?;
    let value = invariant(counter, &q, raw)?;
    let mut record = OutputRecord::new("count", echo(query), q.status(), &value);

    if args.breakdown && q.is_countable() && q.ambient_dim() > 2 {
        let n = i64::from(q.ambient_dim());
        record.breakdown = Some(match q.degree() {
            Degree::Line => (2..=q.codims().len())
                .map(|k| {
                    let part = counter.count_lines(n - 1, &line_floor_projection(q.codims(), k))?;
                    Ok(Contribution {
                        label: format!("floor_at={k}"),
                        diagrams: None,
                        value: part.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?,
            Degree::Conic => {
                let parts = counter.conic_breakdown(n, raw)?;
                vec![
                    Contribution {
                        label: "one_floor".into(),
                        diagrams: None,
                        value: parts.one_floor.to_string(),
                    },
                    Contribution {
                        label: "two_floor".into(),
                        diagrams: None,
                        value: parts.two_floor.to_string(),
                    },
                ]
            }
        });
    }

    if args.self_check {
        match q.degree() {
            Degree::Line => {
                record
                    .checks
                    .push(check("oracle", oracle_line_count(query.dim, raw)?, &value))
            }
            Degree::Conic => {
                let total =
                    DiagramEnumerator::new().distinct_solutions(query.degree, query.dim, raw)?;
                record.checks.push(check("diagram_total", total, &value));
            }
        }
    }
    finish(record, args.format)
}

pub fn enumerate(counter: &ExactCounter, args: &EnumerateArgs) -> Outcome {
    let query = &args.query;
    let raw = &query.codims.0;
    let q = validate_query(query.degree, query.dim, raw)?;
    let mut diagrams = DiagramEnumerator::new().enumerate(query.degree, query.dim, raw)?;
    let total = diagrams.iter().fold(CountValue::default(), |acc, d| {
        acc + d.solution_count::<CountValue>()
    });

    let mut record = OutputRecord::new("enumerate", echo(query), q.status(), &total);
    record.total_diagrams = Some(diagrams.len());

    if args.group_by == Some(GroupBy::Shape) {
        let families = family_breakdown::<CountValue>(&diagrams);
        diagrams.sort_by_cached_key(|d| ron_signature(d));
        record.breakdown = Some(
            families
                .into_iter()
                .map(|f| Contribution {
                    label: f.signature,
                    diagrams: Some(f.diagram_count),
                    value: f.per_diagram_solutions.to_string(),
                })
                .collect(),
        );
    }

    let shown = args.limit.unwrap_or(diagrams.len()).min(diagrams.len());
    record.diagrams = Some(
        diagrams[..shown]
            .iter()
            .map(|d| DiagramEntry {
                solutions: d.solution_count::<CountValue>().to_string(),
                diagram: d.serialize_canonical(),
            })
            .collect(),
    );

    // The invariant must match the diagram total.
    let value = invariant(counter, &q, raw)?;
    if value != total {
        record.checks.push(check("invariant", value, &total));
    }
    finish(record, args.format)
}

fn ron_signature(d: &floorcount::FloorDiagram) -> String {
    family_breakdown::<CountValue>(&[std::sync::Arc::new(d.clone())])
        .pop()
        .map(|f| f.signature)
        .unwrap_or_default()
}

/// Closed form covering a line query: at most two entries above 2.
fn closed_form_for(q: &NormalizedQuery) -> Option<Result<CountValue, Failure>> {
    let n = q.ambient_dim();
    let mut big: Vec<u32> = q.codims().iter().copied().filter(|&c| c > 2).collect();
    big.sort_unstable_by(|a, b| b.cmp(a));
    let value = match big[..] {
        [] => closed_form_cnl(n.into(), 2),
        [l] => closed_form_cnl(n.into(), l.into()),
        [k, l] => closed_form_kl(n.into(), k.into(), l.into()),
        _ => return None,
    };
    Some(value.map_err(Failure::from))
}

fn verify_one(
    counter: &ExactCounter,
    args: &VerifyArgs,
    raw: &[i64],
    batch: bool,
) -> Result<(NormalizedQuery, Maximality, Vec<Check>), Failure> {
    let q = validate_query(args.degree, args.dim, raw)?;
    let maximality = maximality_block(counter, args.degree, args.dim, raw)?;
    let value: CountValue = maximality.invariant.parse().expect("decimal count");
    let mut checks = Vec::new();
    if q.degree() == Degree::Line {
        if args.oracle {
            checks.push(check("oracle", oracle_line_count(args.dim, raw)?, &value));
        }
        if args.closed_form && q.is_countable() {
            match closed_form_for(&q) {
                Some(cf) => checks.push(check("closed_form", cf?, &value)),
                None if !batch => eprintln!("note: no closed form covers {:?}", q.codims()),
                None => {}
            }
        }
    }
    Ok((q, maximality, checks))
}

pub fn verify(counter: &ExactCounter, args: &VerifyArgs) -> Outcome {
    let degree = Degree::from_int(args.degree)?;
    if degree == Degree::Conic && (args.oracle || args.closed_form) {
        eprintln!("note: --oracle and --closed-form apply to lines only");
    }

    if !args.all {
        let raw = &args
            .codims
            .as_ref()
            .expect("clap requires --codims without --all")
            .0;
        let (q, maximality, checks) = verify_one(counter, args, raw, false)?;
        let echo = QueryEcho {
            degree: Some(args.degree),
            dim: args.dim,
            codims: Some(raw.clone()),
            ..QueryEcho::default()
        };
        let mut record = OutputRecord::new("verify", echo, q.status(), &maximality.invariant);
        record.maximality = Some(maximality);
        record.checks = checks;
        return finish(record, args.format);
    }

    let n = u32::try_from(args.dim)
        .ok()
        .filter(|&n| n >= 2)
        .ok_or(Failure::Input(format!(
            "ambient dimension must be at least 2, got {}",
            args.dim
        )))?;
    let multisets = countable_multisets(degree, n);
    let echo = QueryEcho {
        degree: Some(args.degree),
        dim: args.dim,
        ..QueryEcho::default()
    };
    let mut record = OutputRecord::new("verify", echo, Status::Countable, multisets.len());
    for list in &multisets {
        let raw: Vec<i64> = list.iter().map(|&c| i64::from(c)).collect();
        let (_, maximality, checks) = verify_one(counter, args, &raw, true)?;
        let name = list
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        for c in checks.iter().filter(|c| !c.agrees) {
            eprintln!(
                "disagreement at {name}: {} gives {}, recursion gives {}",
                c.name, c.value, maximality.invariant
            );
        }
        if !maximality.maximal {
            eprintln!(
                "disagreement at {name}: invariant {} but {} distinct solutions",
                maximality.invariant, maximality.distinct_solutions
            );
        }
        record.checks.push(Check {
            agrees: maximality.maximal && checks.iter().all(|c| c.agrees),
            name,
            value: maximality.invariant,
        });
    }
    let text = record.render(args.format);
    if record.all_checks_agree() {
        Ok(text)
    } else {
        Err(Failure::Inconsistent(text))
    }
}

pub fn table(counter: &ExactCounter, args: &TableArgs) -> Outcome {
    let min_n = if args.kind == TableKind::Catalan {
        1
    } else {
        2
    };
    if args.max_n < min_n {
        return Err(Failure::Input(format!("--max-n must be at least {min_n}")));
    }
    let mut header: Vec<String> = match args.kind {
        TableKind::Cnl => vec!["n", "l", "value"],
        TableKind::Catalan => vec!["m", "value"],
        TableKind::Kl => vec!["n", "k", "l", "value"],
    }
    .into_iter()
    .map(String::from)
    .collect();

    // (index cells, closed-form value, dimension, codims for the recursion)
    let mut entries: Vec<(Vec<u32>, CountValue, u32, Vec<u32>)> = Vec::new();
    match args.kind {
        TableKind::Cnl => {
            for n in 2..=args.max_n {
                for l in 2..=n {
                    let value = closed_form_cnl(n.into(), l.into())?;
                    entries.push((vec![n, l], value, n, kl_codims(n, l, 2)));
                }
            }
        }
        TableKind::Catalan => {
            for m in 1..=args.max_n {
                entries.push((vec![m], catalan(m), m + 1, vec![2; 2 * m as usize]));
            }
        }
        TableKind::Kl => {
            for n in 2..=args.max_n {
                for k in 2..=n {
                    for l in 2..=k {
                        let value = closed_form_kl(n.into(), k.into(), l.into())?;
                        entries.push((vec![n, k, l], value, n, kl_codims(n, k, l)));
                    }
                }
            }
        }
    }

    if args.check {
        header.extend(["recursion".to_string(), "agrees".to_string()]);
    }
    let mut consistent = true;
    let mut rows = Vec::with_capacity(entries.len());
    for (index, value, n, codims) in entries {
        let mut row: Vec<String> = index.iter().map(|c| c.to_string()).collect();
        row.push(value.to_string());
        if args.check {
            let raw: Vec<i64> = codims.iter().map(|&c| i64::from(c)).collect();
            let recursion = counter.count_lines(n.into(), &raw)?;
            let agrees = recursion == value;
            consistent &= agrees;
            row.push(recursion.to_string());
            row.push(agrees.to_string());
        }
        rows.push(row);
    }
    let text = Table { header, rows }.render(args.format);
    if consistent {
        Ok(text)
    } else {
        Err(Failure::Inconsistent(text))
    }
}

pub fn reducible(counter: &ExactCounter, args: &ReducibleArgs) -> Outcome {
    let q = ReducibleQuery::new(
        args.dim,
        args.l0,
        args.list1.0.clone(),
        args.list2.0.clone(),
        args.k0,
    )?;
    let echo = QueryEcho {
        degree: None,
        dim: args.dim,
        codims: None,
        l0: Some(args.l0),
        list1: Some(args.list1.0.clone()),
        list2: Some(args.list2.0.clone()),
        k0: args.k0,
    };
    let record = match args.method {
        Method::Product => OutputRecord::new(
            "reducible",
            echo,
            q.status(),
            counter.count_reducible_product(&q),
        ),
        Method::Tropical => OutputRecord::new(
            "reducible",
            echo,
            q.status(),
            counter.count_reducible_tropical(&q),
        ),
        Method::Both => {
            let product = counter.count_reducible_product(&q);
            let tropical = counter.count_reducible_tropical(&q);
            let mut record = OutputRecord::new("reducible", echo, q.status(), &product);
            record.checks.push(check("tropical", tropical, &product));
            record
        }
    };
    finish(record, args.format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Format;

    #[test]
    fn disagreement_is_a_consistency_failure() {
        let mut record = OutputRecord::new("count", QueryEcho::default(), Status::Countable, 92);
        record
            .checks
            .push(check("oracle", 91u32.into(), &92u32.into()));
        match finish(record.clone(), Format::Text) {
            Err(Failure::Inconsistent(text)) => assert!(text.contains("oracle: 91 (DISAGREES)")),
            other => panic!("expected a consistency failure, got {other:?}"),
        }
        record.checks.clear();
        assert!(finish(record, Format::Json).is_ok());
    }
}
