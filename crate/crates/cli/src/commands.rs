use std::fs;
use std::path::{Path, PathBuf};

use codelat::constructions::{
    code_formula_is_lattice_by_count, code_formula_lattice, construction_a, construction_a_zq,
    construction_d, construction_d_prime,
};
use codelat::formats::{
    format_lattice, parse_chain, parse_int_rows, parse_lattice, parse_ua_code, parse_vectors,
};
use codelat::gf2::{
    chain_basis, check_distance_conditions, is_schur_closed, parity_chain_basis, ChainBasis,
    DistanceVariant, NestedChain, ParityChainBasis,
};
use codelat::ua_codes::{
    enumerate_ua_with_limit, is_shifted_schur_closed, construction_a_prime, UaCode,
};
use codelat::zlattice::{is_subgroup, Comparison, CosetSet, Lattice};
use thiserror::Error;

use crate::report::Report;
use crate::{BuildArgs, CheckArgs, Construction, Variant};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: codelat::Error,
    },
    #[error(transparent)]
    Core(#[from] codelat::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::Input { source: e, .. } if e.is_guard() => 3,
            _ => 2,
        }
    }
}

pub type Outcome = Result<(Report, bool), CliError>;

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn text(path: &Path, bytes: &[u8]) -> Result<String, CliError> {
    String::from_utf8(bytes.to_vec()).map_err(|_| CliError::Usage(format!("{}: not UTF-8", path.display())))
}

fn parsed<T>(path: &Path, r: codelat::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a file, recording its digest.
fn load(report: &mut Report, key: &str, path: &Path) -> Result<String, CliError> {
    let bytes = read(path)?;
    report.digest(key, &bytes);
    text(path, &bytes)
}

fn guard_chain(chain: &NestedChain, max_enum: usize) -> Result<(), CliError> {
    for c in chain.codes() {
        if c.dim() > max_enum {
            return Err(codelat::Error::CodeTooLarge {
                dim: c.dim(),
                max_dim: max_enum,
            }
            .into());
        }
    }
    Ok(())
}

fn guard_ua(code: &UaCode, max_enum: usize) -> Result<(), CliError> {
    enumerate_ua_with_limit(code, max_enum)?;
    Ok(())
}

pub fn check(args: &CheckArgs) -> Outcome {
    let kind = if args.kind.schur {
        "schur"
    } else if args.kind.shifted_schur {
        "shifted-schur"
    } else {
        "distance"
    };
    let mut report = Report::new(&format!("check --{kind}"));
    let input = load(&mut report, "input_sha256", &args.path)?;
    match kind {
        "schur" => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            report.kv("levels", chain.levels());
            let c = is_schur_closed(&chain);
            report.kv("schur_closed", c.closed);
            if let Some(w) = c.witness {
                report.kv("witness_level", w.level);
                report.kv("witness_left", w.left);
                report.kv("witness_right", w.right);
                report.kv("witness_product", w.product);
            }
            Ok((report, c.closed))
        }
        "shifted-schur" => {
            let code = parsed(&args.path, parse_ua_code(&input))?;
            guard_ua(&code, args.max_enum)?;
            let c = is_shifted_schur_closed(&code)?;
            report.kv("shifted_schur_closed", c.closed);
            if let Some((x, y)) = c.witness {
                report.kv("witness_left", x);
                report.kv("witness_right", y);
            }
            Ok((report, c.closed))
        }
        _ => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            guard_chain(&chain, args.max_enum)?;
            let variant = match args.variant {
                Variant::D => DistanceVariant::D,
                Variant::Dprime => DistanceVariant::DPrime,
            };
            report.kv("gamma", args.gamma);
            report.kv(
                "variant",
                match args.variant {
                    Variant::D => "d",
                    Variant::Dprime => "dprime",
                },
            );
            let levels = check_distance_conditions(&chain, args.gamma, variant)?;
            let all = levels.iter().all(|l| l.pass);
            report.rows(
                "levels",
                levels.iter().map(|l| {
                    let actual = l.actual.map_or("inf".to_string(), |d| d.to_string());
                    format!("level={} required={} actual={actual} pass={}", l.level, l.required, l.pass)
                }),
            );
            report.kv("all_pass", all);
            Ok((report, all))
        }
    }
}

fn read_basis_vectors(report: &mut Report, file: &str, n: usize) -> Result<Vec<codelat::gf2::BitVector>, CliError> {
    let path = Path::new(file);
    let input = load(report, "basis_sha256", path)?;
    let (m, rows) = parsed(path, parse_vectors(&input))?;
    if m != n {
        return Err(CliError::Usage(format!("basis length {m} does not match chain length {n}")));
    }
    Ok(rows)
}

pub fn build(args: &BuildArgs) -> Outcome {
    let name = match args.construction {
        Construction::A => "a",
        Construction::D => "d",
        Construction::Dprime => "dprime",
        Construction::Cf => "cf",
        Construction::Aprime => "aprime",
        Construction::Azq => "azq",
    };
    if args.construction != Construction::Azq && args.q.is_some() {
        return Err(CliError::Usage("--q applies only to --construction azq".into()));
    }
    let mut report = Report::new(&format!("build --construction {name}"));
    let input = load(&mut report, "input_sha256", &args.path)?;
    let lattice = match args.construction {
        Construction::A => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            if chain.levels() != 1 {
                return Err(CliError::Usage("construction a takes a single code".into()));
            }
            construction_a(chain.code(0))?
        }
        Construction::D => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            let basis = if args.basis == "auto" {
                chain_basis(&chain)
            } else {
                let rows = read_basis_vectors(&mut report, &args.basis, chain.len())?;
                ChainBasis::new(&chain, rows)?
            };
            report.rows("chain_basis", basis.vectors().iter());
            construction_d(&chain, &basis)?
        }
        Construction::Dprime => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            let basis = if args.basis == "auto" {
                parity_chain_basis(&chain)
            } else {
                let rows = read_basis_vectors(&mut report, &args.basis, chain.len())?;
                ParityChainBasis::new(&chain, rows)?
            };
            report.rows("parity_basis", basis.vectors().iter());
            construction_d_prime(&chain, &basis)?
        }
        Construction::Cf => {
            let chain = parsed(&args.path, parse_chain(&input))?;
            guard_chain(&chain, args.max_enum)?;
            let is_lattice = code_formula_is_lattice_by_count(&chain)?;
            report.kv("gamma_log2_size", chain.total_dim());
            report.kv("gamma_is_lattice", is_lattice);
            code_formula_lattice(&chain)?
        }
        Construction::Aprime => {
            let code = parsed(&args.path, parse_ua_code(&input))?;
            guard_ua(&code, args.max_enum)?;
            let (gamma, lattice) = construction_a_prime(&code)?;
            report.kv("gamma_size", gamma.len());
            report.kv("gamma_is_lattice", is_subgroup(&gamma).is_subgroup);
            coset_block(&mut report, &gamma);
            lattice
        }
        Construction::Azq => {
            let q = args.q.ok_or_else(|| CliError::Usage("--q is required for azq".into()))?;
            let (n, rows) = parsed(&args.path, parse_int_rows(&input))?;
            report.kv("q", q);
            construction_a_zq(&rows, n, q)?
        }
    };
    report.lattice("basis", &lattice);
    if let Some(out) = &args.output {
        fs::write(out, format_lattice(&lattice)).map_err(|source| CliError::Io {
            path: out.clone(),
            source,
        })?;
    }
    Ok((report, true))
}

fn coset_block(report: &mut Report, gamma: &CosetSet) {
    report.kv("modulus", gamma.modulus());
    report.rows("cosets", gamma.vectors().iter());
}

fn load_lattice(report: &mut Report, key: &str, path: &Path) -> Result<Lattice, CliError> {
    let input = load(report, key, path)?;
    let loaded = parsed(path, parse_lattice(&input))?;
    if !loaded.was_canonical {
        eprintln!("warning: {} is not in Hermite normal form; re-canonicalized", path.display());
    }
    Ok(loaded.lattice)
}

pub fn compare(first: &Path, second: &Path) -> Outcome {
    let mut report = Report::new("compare");
    let a = load_lattice(&mut report, "first_sha256", first)?;
    let b = load_lattice(&mut report, "second_sha256", second)?;
    if a.dim() != b.dim() {
        return Err(CliError::Usage(format!("dimensions differ: {} and {}", a.dim(), b.dim())));
    }
    let cmp = a.compare(&b)?;
    report.kv("relation", cmp.label());
    match &cmp {
        Comparison::Equal => {}
        Comparison::FirstInSecond { witness } => report.vector("witness_second_only", witness),
        Comparison::SecondInFirst { witness } => report.vector("witness_first_only", witness),
        Comparison::Incomparable {
            first_only,
            second_only,
        } => {
            report.vector("witness_first_only", first_only);
            report.vector("witness_second_only", second_only);
        }
    }
    report.kv("first_determinant", a.determinant());
    report.kv("second_determinant", b.determinant());
    Ok((report, true))
}

