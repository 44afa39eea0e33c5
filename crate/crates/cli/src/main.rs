mod args;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use hydrofold::energy::targets_for;
use hydrofold::render::{energy_profile_svg, folds_svg};
use hydrofold::search::SearchResult;
use hydrofold::{
    anneal, compat_search, encode_binary, enumerate_saw, family_energies, family_generate,
    load_scale, parse_sequence, with_workers, AnnealSchedule, BinaryProfile, CompatTargets,
    ConventionSet, EnergyError, HydropathyScale, ScaleSource, SearchError, SeqError, Sequence,
    SequenceFormat, UnknownPolicy, PAPER_TARGETS,
};

use args::{
    Cli, Command, CompatArgs, EncodeArgs, FamilyArgs, InputArgs, InputFormat, MethodArg,
    OutputFormat, SearchArgs, SvgKind,
};

/// Bad flags or flag combinations detected after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

enum Input {
    Sequence(Sequence),
    Profile(BinaryProfile),
}

fn read_source(input: &InputArgs) -> Result<String> {
    let src = &input.source;
    if let Some(text) = &src.sequence {
        return Ok(text.clone());
    }
    let path = src.input.as_ref().expect("clap enforces one source");
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_input(input: &InputArgs) -> Result<Input> {
    if input.source.fixture {
        return Ok(Input::Sequence(Sequence::fixture_5cyt()));
    }
    let text = read_source(input)?;
    Ok(match input.format {
        InputFormat::Hp => Input::Profile(BinaryProfile::from_hp(&text)?),
        InputFormat::Raw => Input::Sequence(parse_sequence(&text, SequenceFormat::Raw)?),
        InputFormat::Fasta => Input::Sequence(parse_sequence(&text, SequenceFormat::Fasta)?),
    })
}

fn build_scale(input: &InputArgs) -> Result<HydropathyScale> {
    let source = match &input.scale {
        Some(path) => ScaleSource::File(path.clone()),
        None => ScaleSource::BuiltinKd,
    };
    let mut scale = load_scale(&source)?;
    if let Some(t) = input.threshold {
        scale = scale.with_threshold(t)?;
    }
    if input.reject_unknown {
        scale = scale.with_unknown_policy(UnknownPolicy::Reject);
    }
    Ok(scale)
}

/// Profile for `input`: H/P text as given, a custom scale when one was
/// requested, otherwise the named hydrophobic set.
fn profile_for(
    input: &InputArgs,
    parsed: &Input,
    set: hydrofold::HydrophobicSet,
) -> Result<BinaryProfile> {
    match parsed {
        Input::Profile(p) => Ok(p.clone()),
        Input::Sequence(seq) if input.custom_scale() => {
            Ok(encode_binary(seq, &build_scale(input)?)?)
        }
        Input::Sequence(seq) => Ok(set.encode(seq)?),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_encode(args: &EncodeArgs) -> Result<()> {
    let profile = match read_input(&args.input)? {
        Input::Profile(p) => p,
        Input::Sequence(seq) => encode_binary(&seq, &build_scale(&args.input)?)?,
    };
    let text = format!(
        "{}\nhydrophobic_count={}\n",
        profile.to_bit_string(),
        profile.hydrophobic_count()
    );
    emit(args.output.as_deref(), &text)
}

fn paper_compat_conventions() -> Result<ConventionSet> {
    let res = compat_search(&Sequence::fixture_5cyt(), &PAPER_TARGETS)?;
    if !res.exact_match {
        eprintln!(
            "note: no convention set reproduces the published energies exactly; \
             using the best-residual set (L1 {:.4})",
            res.residuals.norm()
        );
    }
    Ok(res.best)
}

fn cmd_family_energy(args: &FamilyArgs) -> Result<()> {
    let conventions = if args.paper_compat {
        paper_compat_conventions()?
    } else {
        args.conventions.to_conventions()
    };
    let parsed = read_input(&args.input)?;
    let profile = profile_for(&args.input, &parsed, conventions.hydrophobic_set)?;
    if profile.len() < 2 {
        bail!(usage("a fold family needs at least two residues"));
    }
    let family = family_generate(profile.len() - 1, conventions.generation_mode)?;
    let report = family_energies(&family, &profile, &conventions)?;
    let text = match args.output_format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
        OutputFormat::Svg => match args.svg_kind {
            SvgKind::Energy => energy_profile_svg(&report),
            SvgKind::Folds => {
                let indices: Vec<usize> = if args.folds.is_empty() {
                    (1..=family.len()).collect()
                } else {
                    args.folds.clone()
                };
                let mut picked = Vec::with_capacity(indices.len());
                for idx in indices {
                    let steps = idx
                        .checked_sub(1)
                        .and_then(|i| family.members.get(i))
                        .ok_or_else(|| {
                            usage(format!("fold {idx} is not in 1..={}", family.len()))
                        })?;
                    picked.push((idx, steps));
                }
                folds_svg(&picked, &profile)
            }
        },
    };
    emit(args.output.as_deref(), &text)
}

fn cmd_compat(args: &CompatArgs) -> Result<()> {
    let seq = match read_input(&args.input)? {
        Input::Sequence(seq) => seq,
        Input::Profile(_) => bail!(usage(
            "compat needs an amino-acid sequence, not an H/P profile"
        )),
    };
    let targets = if args.self_consistency {
        targets_for(&seq, &args.conventions.to_conventions())?
    } else if let (Some(e), Some(e1), Some(e2)) = (args.target_e, args.target_e1, args.target_e2) {
        CompatTargets { e, e1, e2 }
    } else if seq.residues() == hydrofold::seq::FIXTURE_5CYT {
        PAPER_TARGETS
    } else {
        bail!(usage(
            "targets are only built in for the 5CYT fixture; pass --target-e/--target-e1/--target-e2 or --self-consistency"
        ));
    };
    let res = compat_search(&seq, &targets)?;
    if let Some(path) = &args.output {
        emit(Some(path), &res.to_json())?;
    }
    let rows = args.rows.unwrap_or(res.all_candidates.len());
    emit(None, &res.summary(rows))
}

fn cmd_search(args: &SearchArgs) -> Result<()> {
    let parsed = read_input(&args.input)?;
    let profile = profile_for(&args.input, &parsed, args.hydrophobic_set.into())?;
    let variant = args.variant.into();
    let result: SearchResult = match args.method {
        MethodArg::Exhaustive => enumerate_saw(&profile, variant, args.guard)?,
        MethodArg::Anneal => {
            let schedule = AnnealSchedule {
                initial_temp: args.initial_temp,
                cooling_factor: args.cooling_factor,
                steps: args.steps,
            };
            anneal(&profile, variant, &schedule, args.seed)?
        }
    };
    emit(args.output.as_deref(), &result.to_json())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Encode(a) => cmd_encode(a),
        Command::FamilyEnergy(a) => cmd_family_energy(a),
        Command::Compat(a) => cmd_compat(a),
        Command::Search(a) => cmd_search(a),
    }
}

/// 0 success, 1 internal error, 2 input error, 3 guard or limit refusal.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(SearchError::GuardExceeded { .. }) = cause.downcast_ref::<SearchError>() {
            return 3;
        }
        if cause.is::<Usage>()
            || cause.is::<io::Error>()
            || cause.is::<SeqError>()
            || cause.is::<EnergyError>()
            || cause.is::<SearchError>()
            || cause.is::<hydrofold::FoldError>()
        {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.workers {
        Some(n) => with_workers(n, || run(&cli)),
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
