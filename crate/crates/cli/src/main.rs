use anyhow::Result;
use clap::Parser;
use modality_core::interactive::Console;
use modality_core::{run_pipeline, RunConfig};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Label sentences of scientific prose as epistemic, deontic or non-modal,
/// mark persons and group attitude holders.
#[derive(Debug, Parser)]
#[command(name = "modality", version)]
struct Args {
    /// Plain-text documents; each file stem becomes the document id.
    #[arg(long = "input", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,

    /// Directory with replacement lexica (defaults to the bundled set).
    #[arg(long)]
    lexicons: Option<PathBuf>,

    /// Annotated text; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// JSON-lines record per sentence.
    #[arg(long)]
    records: Option<PathBuf>,

    /// Text report; a JSON copy is written to `<path>.json`.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Gold labels (`id<TAB>LABEL`) to score against; needs --report.
    #[arg(long)]
    gold: Option<PathBuf>,

    /// Ask on stdin for name and proposition decisions.
    #[arg(long, overrides_with = "no_interactive")]
    interactive: bool,

    /// Answer only from transcripts; unanswered candidates are rejected and
    /// propositions left UNDECIDED (the default).
    #[arg(long, overrides_with = "interactive")]
    no_interactive: bool,

    /// JSON-lines name decisions to replay; interactive runs write them back.
    #[arg(long)]
    names_transcript: Option<PathBuf>,

    /// JSON-lines proposition decisions to replay; interactive runs write them back.
    #[arg(long)]
    attitude_transcript: Option<PathBuf>,

    /// Render every token as `(surface, TAG)`.
    #[arg(long)]
    debug_tags: bool,

    /// Skip the attitude stage; labels and reports are still produced.
    #[arg(long)]
    no_attitude: bool,
}

impl Args {
    fn into_config(self) -> RunConfig {
        RunConfig {
            inputs: self.inputs,
            lexicons: self.lexicons,
            out: self.out,
            records: self.records,
            report: self.report,
            gold: self.gold,
            interactive: self.interactive && !self.no_interactive,
            names_transcript: self.names_transcript,
            attitude_transcript: self.attitude_transcript,
            debug_tags: self.debug_tags,
            skip_attitude: self.no_attitude,
        }
    }
}

fn run(config: RunConfig) -> Result<()> {
    let to_stdout = config.out.is_none();
    let output = if config.interactive {
        let stdin = io::stdin();
        let mut console = Console::new(stdin.lock(), io::stderr());
        run_pipeline(&config, Some(&mut console))?
    } else {
        run_pipeline(&config, None)?
    };
    for diagnostic in &output.diagnostics {
        eprintln!("warning: {diagnostic}");
    }
    if to_stdout {
        let mut stdout = io::stdout().lock();
        stdout.write_all(output.annotated_text.as_bytes())?;
        stdout.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let config = Args::parse().into_config();
    match run(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
