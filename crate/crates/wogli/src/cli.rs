//! Command-line interface.
//!
//! Exit status is 0 on success, 1 for usage errors and 2 for data or
//! validation errors. Every error is printed to stderr as
//! `error[<code>]: <message>`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use wogli_core::analysis::{AnalysisError, GroupFamily, SdKind, TiePolicy};
use wogli_core::augment::{merge_training, sample_augmentation, AugmentError, AugmentationPlan, NeLabel};
use wogli_core::generator::{assemble, instances_from_records, GenError, Punctuation, Sampling};
use wogli_core::lexicon::{validate_lexicon, Violation};
use wogli_core::{GenerationConfig, Lexicon, PairRecord, SetName, ValidationProfile};

use crate::io::{self, Format, FormatError};
use crate::parallel::generate_parallel;
use crate::report::{build_report, render_json_lines, render_text, ReportOptions};

const FORMATS_HELP: &str = "\
File formats (all UTF-8, LF line endings; tabs and line breaks inside text fields are rejected):
  pairs, row-json  one JSON object per line: id, subset, premise, hypothesis, label
                   (entailed|non-entailed), hyp_kind (H1-SO|H2-OS|H3-OS|H1-SiO|H2-iOS),
                   pattern and, for generated data, meta
  pairs, tsv       header `id subset premise hypothesis label hyp_kind pattern`, tab separated;
                   carries no metadata
  predictions      `id<TAB>run_index<TAB>predicted_label`, optional header starting with `id`;
                   labels entailment|neutral|contradiction or entailed|non-entailed
  pll scores       `sentence_id<TAB>score`, optional header; premise scores are keyed by premise
                   id, hypothesis scores by pair id
  training file    `premise<TAB>hypothesis<TAB>label`, no header, labels
                   entailment|neutral|contradiction
  lexicon          see docs/FORMATS.md; the bundled lexicon is used unless --lexicon or
                   WOGLI_LEXICON names a file
Pair files ending in .tsv are read and written as TSV, anything else as row JSON, unless
--format says otherwise.";

#[derive(Parser, Debug)]
#[command(name = "wogli", version, about = "German word-order NLI challenge set generator", after_long_help = FORMATS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a challenge set.
    Generate(GenerateArgs),
    /// Derive a set from an existing one.
    Derive {
        #[command(subcommand)]
        target: DeriveTarget,
    },
    /// Split a generated set into a constrained augmentation sample and the rest.
    SampleAugmentation(SampleArgs),
    /// Append augmentation pairs to a three-class training file and shuffle.
    Merge(MergeArgs),
    /// Accuracy breakdowns of model predictions.
    Analyze(AnalyzeArgs),
    /// Check a lexicon file.
    ValidateLexicon(ValidateArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SetArg {
    Wogli,
    PSubject,
    Dative,
    Ditransitive,
    OsHard,
}

impl From<SetArg> for SetName {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::Wogli => SetName::Wogli,
            SetArg::PSubject => SetName::PSubject,
            SetArg::Dative => SetName::Dative,
            SetArg::Ditransitive => SetName::Ditransitive,
            SetArg::OsHard => SetName::OsHard,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    RowJson,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::RowJson => Format::RowJson,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

#[derive(Args, Debug)]
struct LexiconArg {
    /// Lexicon file; defaults to the bundled lexicon.
    #[arg(long, env = "WOGLI_LEXICON")]
    lexicon: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    set: SetArg,
    #[arg(long)]
    seed: u64,
    /// Premises per pattern; defaults to 150 for dative, 500 for
    /// ditransitive and 1000 otherwise.
    #[arg(long)]
    per_pattern: Option<usize>,
    #[command(flatten)]
    lexicon: LexiconArg,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Draw with replacement and drop duplicate premises afterwards.
    #[arg(long)]
    with_replacement_dedup: bool,
    /// Separate the final period by a space.
    #[arg(long)]
    spaced_period: bool,
    #[arg(long, default_value_t = NonZeroUsize::MIN)]
    workers: NonZeroUsize,
}

#[derive(Subcommand, Debug)]
enum DeriveTarget {
    /// Object-first swapped hypotheses for every premise of a row-json accusative set.
    OsHard {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        lexicon: LexiconArg,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum PlanArg {
    #[value(name = "1037")]
    Large,
    #[value(name = "102")]
    Small,
    Custom,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    plan: PlanArg,
    #[arg(long)]
    seed: u64,
    /// Row-json pair file with generation metadata.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out_aug: PathBuf,
    #[arg(long)]
    out_rest: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[command(flatten)]
    lexicon: LexiconArg,
    /// Custom plan: premises per pattern.
    #[arg(long)]
    per_pattern: Option<usize>,
    /// Custom plan: minimum premises per verb.
    #[arg(long, default_value_t = 0)]
    verb_min: usize,
    /// Custom plan: maximum premises per verb.
    #[arg(long)]
    verb_max: Option<usize>,
    /// Custom plan: require every noun form of the input.
    #[arg(long)]
    all_noun_forms: bool,
    #[arg(long, default_value_t = wogli_core::augment::DEFAULT_RETRY_BUDGET)]
    retry_budget: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum NeLabelArg {
    Neutral,
    Contradiction,
}

#[derive(Args, Debug)]
struct MergeArgs {
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    aug: PathBuf,
    #[arg(long, value_enum, default_value = "neutral")]
    ne_label: NeLabelArg,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GroupsArg {
    All,
    Gender,
    Definiteness,
    Number,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SdArg {
    Population,
    Sample,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ReportFormatArg {
    Text,
    RowJson,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long)]
    runs: usize,
    #[arg(long, value_enum, default_value = "all")]
    groups: GroupsArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    report_format: ReportFormatArg,
    #[arg(long, value_enum, default_value = "population")]
    sd: SdArg,
    /// Resolve even-run ties in the majority vote as non-entailed.
    #[arg(long)]
    tie_break_not_entailed: bool,
    /// Pseudo-log-likelihood scores to aggregate.
    #[arg(long)]
    pll_scores: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ProfileArg {
    Full,
    Toy,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Lexicon file; defaults to WOGLI_LEXICON, then the bundled lexicon.
    #[arg(long = "in", env = "WOGLI_LEXICON")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "full")]
    profile: ProfileArg,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("lexicon invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Lexicon(Vec<Violation>),
    #[error("{0}")]
    Generate(GenError),
    #[error("{0}")]
    Augment(AugmentError),
    #[error("{0}")]
    Analysis(AnalysisError),
    #[error("derived premise differs from source: `{derived}` vs `{source_text}`")]
    Mismatch { derived: String, source_text: String },
}

impl CliError {
    fn is_broken_pipe(&self) -> bool {
        match self {
            CliError::Io { source, .. } | CliError::Format(FormatError::Io { source, .. }) => {
                source.kind() == std::io::ErrorKind::BrokenPipe
            }
            _ => false,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } | CliError::Format(FormatError::Io { .. }) => "io",
            CliError::Format(_) => "format",
            CliError::Lexicon(_) => "lexicon",
            CliError::Generate(_) | CliError::Mismatch { .. } => "generate",
            CliError::Augment(_) => "augment",
            CliError::Analysis(_) => "analysis",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Generate(e)
    }
}

impl From<AugmentError> for CliError {
    fn from(e: AugmentError) -> Self {
        CliError::Augment(e)
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Analysis(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let text = e.to_string();
                    let text = text.strip_prefix("error: ").unwrap_or(&text);
                    let _ = write!(stderr, "error[usage]: {text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        // A downstream reader such as `head` closed the pipe.
        Err(e) if e.is_broken_pipe() => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.code());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Generate(args) => generate(args, stdout, stderr),
        Command::Derive { target: DeriveTarget::OsHard { from, out, format, lexicon } } => {
            derive_os_hard(&from, out.as_deref(), format, &lexicon, stdout, stderr)
        }
        Command::SampleAugmentation(args) => sample(args, stderr),
        Command::Merge(args) => merge(args),
        Command::Analyze(args) => analyze(args, stdout),
        Command::ValidateLexicon(args) => validate(args, stdout),
    }
}

fn load_lexicon(arg: &LexiconArg) -> Result<Lexicon, CliError> {
    let lex = match &arg.lexicon {
        Some(path) => io::load_lexicon_file(path)?,
        None => Lexicon::bundled(),
    };
    let report = validate_lexicon(&lex, ValidationProfile::Toy);
    if !report.is_valid() {
        return Err(CliError::Lexicon(report.violations));
    }
    Ok(lex)
}

fn output_format(explicit: Option<FormatArg>, out: Option<&Path>) -> Format {
    match (explicit, out) {
        (Some(f), _) => f.into(),
        (None, Some(path)) => Format::from_path(path),
        (None, None) => Format::RowJson,
    }
}

fn emit_pairs(
    records: &[PairRecord],
    out: Option<&Path>,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<usize, CliError> {
    Ok(match out {
        Some(path) => io::write_pairs_file(path, records, format)?,
        None => io::write_pairs(records, format, stdout)?,
    })
}

fn generate(args: GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let lex = load_lexicon(&args.lexicon)?;
    let set: SetName = args.set.into();
    let config = GenerationConfig {
        seed: args.seed,
        per_pattern: args.per_pattern.unwrap_or_else(|| set.default_per_pattern()),
        sampling: if args.with_replacement_dedup { Sampling::WithReplacementDedup } else { Sampling::WithoutReplacement },
        punctuation: if args.spaced_period { Punctuation::Spaced } else { Punctuation::Attached },
    };
    let generated = generate_parallel(set, &lex, &config, args.workers)?;
    let records = generated.records();
    let format = output_format(args.format, args.out.as_deref());
    emit_pairs(&records, args.out.as_deref(), format, stdout)?;
    let _ = writeln!(stderr, "{}: {} premises, {} pairs", set.name(), generated.premise_count(), records.len());
    Ok(())
}

fn derive_os_hard(
    from: &Path,
    out: Option<&Path>,
    format: Option<FormatArg>,
    lexicon: &LexiconArg,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let lex = load_lexicon(lexicon)?;
    let source = io::read_pairs_file(from, None)?;
    let punctuation = match source.first() {
        Some(r) if r.premise.ends_with(" .") => Punctuation::Spaced,
        _ => Punctuation::Attached,
    };
    let instances = instances_from_records(&source, &lex)?;
    for r in &source {
        if SetName::parse(&r.subset).map(SetName::government) != Some(wogli_core::lexicon::Government::Accusative) {
            return Err(CliError::Usage(format!("record {} is not from an accusative set", r.id)));
        }
    }
    let config = GenerationConfig { punctuation, ..GenerationConfig::new(0, 1) };
    let derived = assemble(SetName::OsHard, instances, &config)?;

    let mut seen = BTreeSet::new();
    let originals = source.iter().filter(|r| seen.insert(r.premise_key().to_string()));
    for (item, original) in derived.items.iter().zip(originals) {
        let text = item.premise.text(punctuation);
        if text != original.premise {
            return Err(CliError::Mismatch { derived: text, source_text: original.premise.clone() });
        }
    }
    let records = derived.records();
    emit_pairs(&records, out, output_format(format, out), stdout)?;
    let _ = writeln!(stderr, "os-hard: {} pairs", records.len());
    Ok(())
}

fn sample(args: SampleArgs, stderr: &mut dyn Write) -> Result<(), CliError> {
    let lex = load_lexicon(&args.lexicon)?;
    let input = io::read_pairs_file(&args.input, None)?;
    let budget = |mut p: AugmentationPlan| {
        p.retry_budget = args.retry_budget;
        p
    };
    let split = match args.plan {
        PlanArg::Large => sample_augmentation(&input, None, &budget(AugmentationPlan::large(args.seed)), &lex)?,
        PlanArg::Small => {
            let outer = sample_augmentation(&input, None, &budget(AugmentationPlan::large(args.seed)), &lex)?;
            sample_augmentation(&input, Some(&outer.premises), &budget(AugmentationPlan::small(args.seed)), &lex)?
        }
        PlanArg::Custom => {
            let per_pattern = args
                .per_pattern
                .ok_or_else(|| CliError::Usage("--plan custom needs --per-pattern".into()))?;
            let plan = AugmentationPlan {
                premises_per_pattern: per_pattern,
                verb_min: args.verb_min,
                verb_max: args.verb_max.unwrap_or(usize::MAX),
                require_all_noun_forms: args.all_noun_forms,
                seed: args.seed,
                retry_budget: args.retry_budget,
            };
            sample_augmentation(&input, None, &plan, &lex)?
        }
    };
    let aug_format = output_format(args.format, Some(&args.out_aug));
    let rest_format = output_format(args.format, Some(&args.out_rest));
    io::write_pairs_file(&args.out_aug, &split.augmentation, aug_format)?;
    io::write_pairs_file(&args.out_rest, &split.remainder, rest_format)?;
    let _ = writeln!(
        stderr,
        "augmentation: {} premises, {} pairs; remainder: {} pairs",
        split.premises.len(),
        split.augmentation.len(),
        split.remainder.len()
    );
    Ok(())
}

fn open(path: &Path) -> Result<BufReader<fs::File>, CliError> {
    fs::File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn merge(args: MergeArgs) -> Result<(), CliError> {
    let base = io::read_nli_rows(open(&args.base)?)?;
    let aug = io::read_pairs_file(&args.aug, None)?;
    let ne = match args.ne_label {
        NeLabelArg::Neutral => NeLabel::Neutral,
        NeLabelArg::Contradiction => NeLabel::Contradiction,
    };
    let rows = merge_training(base, &aug, ne, args.seed);
    let file = fs::File::create(&args.out).map_err(|source| CliError::Io { path: args.out.clone(), source })?;
    io::write_nli_rows(&rows, file)?;
    Ok(())
}

fn analyze(args: AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let gold = io::read_pairs_file(&args.gold, None)?;
    let preds = io::read_predictions(open(&args.predictions)?, args.runs)?;
    let scores = match &args.pll_scores {
        Some(path) => Some(io::read_scores(open(path)?)?),
        None => None,
    };
    let options = ReportOptions {
        family: match args.groups {
            GroupsArg::All => GroupFamily::All,
            GroupsArg::Gender => GroupFamily::Gender,
            GroupsArg::Definiteness => GroupFamily::Definiteness,
            GroupsArg::Number => GroupFamily::Number,
        },
        sd: match args.sd {
            SdArg::Population => SdKind::Population,
            SdArg::Sample => SdKind::Sample,
        },
        tie: if args.tie_break_not_entailed { TiePolicy::NotEntailedWins } else { TiePolicy::Error },
    };
    let needs_meta = matches!(options.family, GroupFamily::Gender | GroupFamily::Definiteness);
    if let Some(r) = gold.iter().find(|r| needs_meta && r.meta.is_none()) {
        return Err(CliError::Usage(format!(
            "gold record {} has no generation metadata; gender and definiteness groups need a row-json gold file",
            r.id
        )));
    }
    let rows = build_report(&gold, &preds, scores.as_ref(), &options)?;
    let text = match args.report_format {
        ReportFormatArg::Text => render_text(&rows),
        ReportFormatArg::RowJson => render_json_lines(&rows),
    };
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn validate(args: ValidateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let lex = match &args.input {
        Some(path) => io::load_lexicon_file(path)?,
        None => Lexicon::bundled(),
    };
    let profile = match args.profile {
        ProfileArg::Full => ValidationProfile::Full,
        ProfileArg::Toy => ValidationProfile::Toy,
    };
    let report = validate_lexicon(&lex, profile);
    if !report.is_valid() {
        return Err(CliError::Lexicon(report.violations));
    }
    let _ = writeln!(stdout, "lexicon valid");
    Ok(())
}
