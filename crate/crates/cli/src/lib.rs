//! The `qkb` command line: argument model, subcommands and exit codes.

pub mod table;

use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkb_client::{Client, ClientError};
use qkb_core::corpus::{load_corpus, load_queries, Corpus, CorpusError, LoadOptions};
use qkb_core::sparql::{evaluate, parse_query_with, serialize_results, ResultFormat, SolutionSequence};
use qkb_core::turtle::serialize;
use qkb_core::{ParseError, PrefixMap};
use qkb_server::{EndpointState, ServeError};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Findings = 1,
    QuerySyntax = 2,
    Load = 3,
    Bind = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

#[derive(Debug, Parser)]
#[command(name = "qkb", version, about = "Quranic nature knowledge base: load, validate, query, export and serve")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Corpus directory containing `manifest` and the Turtle files.
    #[arg(long = "data", env = "QKB_DATA_DIR", default_value = "data", global = true)]
    pub data_dir: PathBuf,
    /// Skip inference; work on the asserted triples only.
    #[arg(long, global = true)]
    pub no_materialize: bool,
    /// Output format for query results.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Xml,
    Tsv,
    Table,
}

impl OutputFormat {
    fn wire(self) -> ResultFormat {
        match self {
            OutputFormat::Json | OutputFormat::Table => ResultFormat::Json,
            OutputFormat::Xml => ResultFormat::Xml,
            OutputFormat::Tsv => ResultFormat::Tsv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    Asserted,
    Materialized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load the corpus and print a summary.
    Load,
    /// Check the corpus integrity rules; exit 1 if anything is found.
    Validate,
    /// Run a SPARQL query, locally or against a running endpoint.
    Query {
        /// Read the query from a file (`-` for standard input).
        #[arg(short = 'f', long = "file", conflicts_with = "inline", required_unless_present = "inline")]
        file: Option<PathBuf>,
        /// Query text given inline.
        #[arg(short = 'e', long = "inline")]
        inline: Option<String>,
        /// Send the query to this endpoint instead of loading the corpus.
        #[arg(long, env = "QKB_ENDPOINT")]
        endpoint: Option<String>,
    },
    /// Write the store as Turtle.
    Export {
        #[arg(long, value_enum)]
        view: Option<View>,
    },
    /// Serve the SPARQL endpoint until interrupted.
    Serve {
        #[arg(long, default_value_t = 7878, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Canned queries directory; defaults to `queries` next to the data directory.
        #[arg(long)]
        queries: Option<PathBuf>,
        /// Static explorer UI assets to serve under `/`.
        #[arg(long)]
        ui: Option<PathBuf>,
    },
}

impl Config {
    fn options(&self) -> LoadOptions {
        LoadOptions { materialize: !self.no_materialize, ..LoadOptions::default() }
    }

    fn load(&self, err: &mut dyn Write) -> Result<Corpus, Exit> {
        if !self.data_dir.is_dir() {
            writeln!(err, "error: data directory {} does not exist", self.data_dir.display()).ok();
            return Err(Exit::Load);
        }
        load_corpus(&self.data_dir, self.options()).map_err(|e| report_load_error(&e, err))
    }
}

fn report_load_error(e: &CorpusError, err: &mut dyn Write) -> Exit {
    match e {
        CorpusError::Schema(report) => {
            writeln!(err, "error: schema is invalid").ok();
            write!(err, "{report}").ok();
            Exit::Findings
        }
        other => {
            writeln!(err, "error: {other}").ok();
            Exit::Load
        }
    }
}

/// Runs a parsed command line, writing to the given streams.
pub async fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let config = cli.config;
    match cli.command {
        Command::Load => cmd_load(&config, out, err),
        Command::Validate => cmd_validate(&config, out, err),
        Command::Query { file, inline, endpoint } => {
            let text = match (file, inline) {
                (_, Some(text)) => text,
                (Some(path), None) => match read_query(&path) {
                    Ok(text) => text,
                    Err(e) => {
                        writeln!(err, "error: {}: {e}", path.display()).ok();
                        return Exit::Load;
                    }
                },
                (None, None) => unreachable!("clap requires one query source"),
            };
            match endpoint {
                Some(url) => cmd_query_remote(&Client::new(url), &text, config.format, out, err).await,
                None => cmd_query(&config, &text, out, err),
            }
        }
        Command::Export { view } => cmd_export(&config, view, out, err),
        Command::Serve { port, host, queries, ui } => {
            let queries = queries.unwrap_or_else(|| default_queries_dir(&config.data_dir));
            cmd_serve(&config, SocketAddr::new(host, port), &queries, ui, out, err).await
        }
    }
}

fn read_query(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
    }
}

pub fn default_queries_dir(data_dir: &Path) -> PathBuf {
    data_dir.parent().map(|p| p.join("queries")).unwrap_or_else(|| PathBuf::from("queries"))
}

fn cmd_load(config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let start = Instant::now();
    let corpus = match config.load(err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let elapsed = start.elapsed();
    let asserted = corpus.store.len() - corpus.store.inferred_count();
    writeln!(out, "loaded {} in {:.1} ms", config.data_dir.display(), elapsed.as_secs_f64() * 1000.0).ok();
    writeln!(out, "  triples      {} ({asserted} asserted, {} inferred)", corpus.store.len(), corpus.store.inferred_count()).ok();
    if let Some(stats) = corpus.materialized {
        writeln!(out, "  rounds       {}", stats.rounds).ok();
    }
    writeln!(out, "  classes      {}", corpus.schema.classes.len()).ok();
    writeln!(out, "  properties   {}", corpus.schema.object_properties.len()).ok();
    writeln!(out, "  verses       {}", corpus.verses().len()).ok();
    writeln!(out, "  extensions   {} flags", corpus.manifest.extensions.len()).ok();
    for w in &corpus.warnings {
        writeln!(err, "warning: {w}").ok();
    }
    Exit::Ok
}

fn cmd_validate(config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let corpus = match config.load(err) {
        Ok(c) => c,
        Err(Exit::Findings) => return Exit::Findings,
        Err(code) => return code,
    };
    let report = corpus.validate();
    if report.is_empty() {
        writeln!(out, "ok: no findings").ok();
        Exit::Ok
    } else {
        write!(out, "{report}").ok();
        let n = report.findings().len();
        writeln!(err, "{n} finding{}", if n == 1 { "" } else { "s" }).ok();
        Exit::Findings
    }
}

fn syntax_error(e: &ParseError, err: &mut dyn Write) -> Exit {
    writeln!(err, "query syntax error at {e}").ok();
    Exit::QuerySyntax
}

fn write_solutions(
    solutions: &SolutionSequence,
    format: OutputFormat,
    prefixes: &PrefixMap,
    out: &mut dyn Write,
) -> Exit {
    let text = match format {
        OutputFormat::Table => table::render(solutions, prefixes, table::terminal_width()),
        other => serialize_results(solutions, other.wire(), prefixes),
    };
    write_body(&text, out);
    Exit::Ok
}

/// Writes `text`, ending it with a newline if it lacks one.
fn write_body(text: &str, out: &mut dyn Write) {
    out.write_all(text.as_bytes()).ok();
    if !text.ends_with('\n') {
        out.write_all(b"\n").ok();
    }
}

fn cmd_query(config: &Config, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let corpus = match config.load(err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let ast = match parse_query_with(text, &corpus.prefixes) {
        Ok(ast) => ast,
        Err(e) => return syntax_error(&e, err),
    };
    for w in &ast.warnings {
        writeln!(err, "warning: {w}").ok();
    }
    let solutions = evaluate(&ast, &corpus.store);
    write_solutions(&solutions, config.format, &ast.prefixes, out)
}

/// Remote counterpart of `query`: the endpoint parses and evaluates, the
/// CLI only renders.
pub async fn cmd_query_remote(client: &Client, text: &str, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let result = match format {
        OutputFormat::Table => client.select(text).await.map(|s| table::render(&s, &display_prefixes(text), table::terminal_width())),
        other => client.query_raw(text, other.wire()).await,
    };
    match result {
        Ok(body) => {
            write_body(&body, out);
            Exit::Ok
        }
        Err(ClientError::Query(body)) => {
            match (body.line, body.column) {
                (Some(_), Some(_)) => writeln!(err, "query syntax error at {}", body.error),
                _ => writeln!(err, "query rejected: {}", body.error),
            }
            .ok();
            Exit::QuerySyntax
        }
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            Exit::Load
        }
    }
}

/// Prefixes for compacting remote results: the corpus defaults plus any
/// the query declares.
fn display_prefixes(text: &str) -> PrefixMap {
    let base = qkb_core::model::vocab::corpus_prefixes();
    parse_query_with(text, &base).map(|ast| ast.prefixes).unwrap_or(base)
}

fn cmd_export(config: &Config, view: Option<View>, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let view = view.unwrap_or(if config.no_materialize { View::Asserted } else { View::Materialized });
    let config = Config { no_materialize: view == View::Asserted, ..config.clone() };
    let corpus = match config.load(err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let triples = match view {
        View::Asserted => corpus.asserted_triples(),
        View::Materialized => corpus.store.triples(),
    };
    out.write_all(serialize(&triples, &corpus.prefixes).as_bytes()).ok();
    Exit::Ok
}

async fn cmd_serve(
    config: &Config,
    addr: SocketAddr,
    queries_dir: &Path,
    ui: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let corpus = match config.load(err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let report = corpus.validate();
    if !report.is_empty() {
        write!(err, "{report}").ok();
        writeln!(err, "refusing to serve an invalid corpus").ok();
        return Exit::Findings;
    }
    let queries = match load_queries(queries_dir) {
        Ok(q) => q,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            return Exit::Load;
        }
    };
    let mut state = EndpointState::new(corpus, queries);
    if let Some(dir) = ui {
        state = state.with_ui_dir(dir);
    }
    let listener = match qkb_server::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            return Exit::Bind;
        }
    };
    let bound = listener.local_addr().unwrap_or(addr);
    writeln!(out, "listening on http://{bound}").ok();
    out.flush().ok();
    tokio::select! {
        result = qkb_server::serve(listener, state) => match result {
            Ok(()) => Exit::Ok,
            Err(ServeError::Bind { .. }) => Exit::Bind,
            Err(e) => {
                writeln!(err, "error: {e}").ok();
                Exit::Load
            }
        },
        _ = tokio::signal::ctrl_c() => Exit::Ok,
    }
}
