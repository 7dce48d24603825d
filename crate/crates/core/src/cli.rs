//! JSON command-line front end.
//!
//! Every invocation reads one JSON document (from `--input` or standard
//! input) and writes one compact JSON document followed by a newline.
//! Exit codes: 0 for success and for boolean answers that are true, 1 for
//! false answers and witness-bearing negative verdicts, 2 for bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::convex::{HullMembership, PositiveOrder};
use crate::semigroup::Membership;
use crate::{
    Error, FGSemigroup, FormalDifference, MatrixOrder, NaturalWitness, PointSet, RatVector,
    WellOrderVerdict,
};

pub const DEFAULT_MAX_COUNT: usize = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "lexorder",
    version,
    about = "Exact lexicographic orders, hull certificates and well-ordered semigroups"
)]
pub struct Cli {
    /// JSON input file; standard input when omitted or `-`.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Matrix orders: {"order": {"dim": n, "rows": [[...]]}, ...}
    #[command(subcommand)]
    Order(OrderCommand),
    /// Finite point sets: {"set": {"dim": n, "points": [[...]]}, ...}
    #[command(subcommand)]
    Hull(HullCommand),
    /// Finitely generated semigroups: {"semigroup": {"dim": n, "generators": [[...]], "include_identity": bool}, ...}
    #[command(subcommand)]
    Semigroup(SemigroupCommand),
}

#[derive(Subcommand, Debug)]
pub enum OrderCommand {
    /// Compare `u` with `v`.
    Compare,
    /// Is the order total on Q^n?
    Total,
    /// Canonical representative of the order.
    Canonicalize,
    /// Do `left` and `right` define the same order?
    Equal,
    /// Flag of subspaces of the order.
    Flag,
    /// Compare formal differences `a1` and `a2`.
    GroupCompare,
}

#[derive(Subcommand, Debug)]
pub enum HullCommand {
    /// Is `x` in the convex hull of `set`?
    Member,
    /// Carathéodory certificate for `x`.
    Caratheodory,
    /// Natural numbers q with Σ q_i a_i = 0.
    OriginWitness,
    /// Total order putting every point strictly above `a`.
    Separate,
}

#[derive(Subcommand, Debug)]
pub enum SemigroupCommand {
    /// Order under which the semigroup is well-ordered, or a witness that none exists.
    FindOrder,
    /// Is the semigroup well-ordered under `order`?
    Wellorder,
    /// Smallest elements in increasing order.
    Enumerate {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
        max_count: usize,
    },
    /// Decomposition of `x` using at most `--bound` generators.
    Member {
        #[arg(long, default_value_t = 32)]
        bound: usize,
    },
    /// Least element under `order`.
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFalse,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFalse => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliResponse {
    pub status: Status,
    /// The complete output, newline-terminated.
    pub output: String,
}

impl CliResponse {
    fn json<T: Serialize>(status: Status, payload: &T) -> Self {
        let mut output = serde_json::to_string(payload).expect("payload serializes");
        output.push('\n');
        CliResponse { status, output }
    }

    fn error(message: impl Into<String>) -> Self {
        Self::json(
            Status::InputError,
            &ErrorPayload {
                error: message.into(),
            },
        )
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

#[derive(Serialize)]
struct ErrorPayload {
    error: String,
}

/// Parses the arguments, reads the document and dispatches.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CliResponse
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliResponse {
                    status: Status::Ok,
                    output: e.to_string(),
                },
                _ => CliResponse::error(first_line(&e.to_string())),
            };
        }
    };
    let document = match read_document(cli.input.as_ref(), stdin) {
        Ok(doc) => doc,
        Err(message) => return CliResponse::error(message),
    };
    match dispatch(&cli.command, &document) {
        Ok(response) => response,
        Err(message) => CliResponse::error(message),
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn read_document(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| format!("cannot read input file {}: {e}", p.display())),
        _ => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(buf)
        }
    }
}

fn parse<T: DeserializeOwned>(document: &str) -> Result<T, String> {
    let mut de = serde_json::Deserializer::from_str(document);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            format!("invalid input: {}", e.inner())
        } else {
            format!("invalid input at `{path}`: {}", e.inner())
        }
    })?;
    de.end().map_err(|e| format!("invalid input: {e}"))?;
    Ok(value)
}

fn input_error(e: Error) -> String {
    e.to_string()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderDoc {
    order: MatrixOrder,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompareDoc {
    order: MatrixOrder,
    u: RatVector,
    v: RatVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EqualDoc {
    left: MatrixOrder,
    right: MatrixOrder,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupCompareDoc {
    order: MatrixOrder,
    a1: FormalDifference,
    a2: FormalDifference,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    set: PointSet,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetPointDoc {
    set: PointSet,
    x: RatVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeparateDoc {
    set: PointSet,
    a: RatVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemigroupDoc {
    semigroup: FGSemigroup,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemigroupOrderDoc {
    semigroup: FGSemigroup,
    order: MatrixOrder,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemigroupPointDoc {
    semigroup: FGSemigroup,
    x: RatVector,
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn natural(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a JSON number"))
}

#[derive(Serialize)]
struct WitnessPayload {
    witness: Vec<Value>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    zero_generator: bool,
}

impl From<&NaturalWitness> for WitnessPayload {
    fn from(w: &NaturalWitness) -> Self {
        WitnessPayload {
            witness: w.coeffs.iter().map(natural).collect(),
            zero_generator: w.zero_generator,
        }
    }
}

#[derive(Serialize)]
struct NotWellOrderedPayload<'a> {
    verdict: &'static str,
    witness: &'a RatVector,
}

fn not_well_ordered(witness: &RatVector) -> CliResponse {
    CliResponse::json(
        Status::PropertyFalse,
        &NotWellOrderedPayload {
            verdict: "not-well-ordered",
            witness,
        },
    )
}

fn dispatch(command: &Command, document: &str) -> Result<CliResponse, String> {
    match command {
        Command::Order(cmd) => order_command(cmd, document),
        Command::Hull(cmd) => hull_command(cmd, document),
        Command::Semigroup(cmd) => semigroup_command(cmd, document),
    }
}

fn order_command(cmd: &OrderCommand, document: &str) -> Result<CliResponse, String> {
    #[derive(Serialize)]
    struct ResultPayload {
        result: &'static str,
    }

    match cmd {
        OrderCommand::Compare => {
            let doc: CompareDoc = parse(document)?;
            let o = doc.order.compare(&doc.u, &doc.v).map_err(input_error)?;
            Ok(CliResponse::json(
                Status::Ok,
                &ResultPayload {
                    result: ordering_name(o),
                },
            ))
        }
        OrderCommand::Total => {
            #[derive(Serialize)]
            struct Payload {
                total: bool,
                rank: usize,
            }
            let doc: OrderDoc = parse(document)?;
            let rank = doc.order.rank();
            let total = rank == doc.order.dim();
            let status = if total {
                Status::Ok
            } else {
                Status::PropertyFalse
            };
            Ok(CliResponse::json(status, &Payload { total, rank }))
        }
        OrderCommand::Canonicalize => {
            #[derive(Serialize)]
            struct Payload {
                order: MatrixOrder,
            }
            let doc: OrderDoc = parse(document)?;
            Ok(CliResponse::json(
                Status::Ok,
                &Payload {
                    order: doc.order.canonicalize(),
                },
            ))
        }
        OrderCommand::Equal => {
            #[derive(Serialize)]
            struct Payload {
                equal: bool,
                left: MatrixOrder,
                right: MatrixOrder,
            }
            let doc: EqualDoc = parse(document)?;
            let equal = doc.left.orders_equal(&doc.right).map_err(input_error)?;
            let status = if equal {
                Status::Ok
            } else {
                Status::PropertyFalse
            };
            Ok(CliResponse::json(
                status,
                &Payload {
                    equal,
                    left: doc.left.canonicalize(),
                    right: doc.right.canonicalize(),
                },
            ))
        }
        OrderCommand::Flag => {
            let doc: OrderDoc = parse(document)?;
            Ok(CliResponse::json(Status::Ok, &doc.order.flag()))
        }
        OrderCommand::GroupCompare => {
            let doc: GroupCompareDoc = parse(document)?;
            let o = doc
                .order
                .group_extend_compare(&doc.a1, &doc.a2)
                .map_err(input_error)?;
            Ok(CliResponse::json(
                Status::Ok,
                &ResultPayload {
                    result: ordering_name(o),
                },
            ))
        }
    }
}

fn hull_command(cmd: &HullCommand, document: &str) -> Result<CliResponse, String> {
    match cmd {
        HullCommand::Member => {
            #[derive(Serialize)]
            #[serde(untagged)]
            enum Payload {
                Inside {
                    member: bool,
                    coeffs: Vec<crate::Rational>,
                },
                Outside {
                    member: bool,
                    functional: RatVector,
                    threshold: crate::Rational,
                },
            }
            let doc: SetPointDoc = parse(document)?;
            Ok(match doc.set.point_in_hull(&doc.x).map_err(input_error)? {
                HullMembership::Inside(coeffs) => CliResponse::json(
                    Status::Ok,
                    &Payload::Inside {
                        member: true,
                        coeffs,
                    },
                ),
                HullMembership::Outside(sep) => CliResponse::json(
                    Status::PropertyFalse,
                    &Payload::Outside {
                        member: false,
                        functional: sep.functional,
                        threshold: sep.threshold,
                    },
                ),
            })
        }
        HullCommand::Caratheodory => {
            #[derive(Serialize)]
            struct Payload {
                member: bool,
                #[serde(skip_serializing_if = "Option::is_none", flatten)]
                certificate: Option<crate::CaratheodoryCertificate>,
            }
            let doc: SetPointDoc = parse(document)?;
            let cert = doc.set.caratheodory(&doc.x).map_err(input_error)?;
            let status = if cert.is_some() {
                Status::Ok
            } else {
                Status::PropertyFalse
            };
            Ok(CliResponse::json(
                status,
                &Payload {
                    member: cert.is_some(),
                    certificate: cert,
                },
            ))
        }
        HullCommand::OriginWitness => {
            let doc: SetDoc = parse(document)?;
            Ok(match doc.set.natural_combination_witness() {
                Some(w) => CliResponse::json(Status::Ok, &WitnessPayload::from(&w)),
                None => CliResponse::json(
                    Status::PropertyFalse,
                    &serde_json::json!({ "witness": null }),
                ),
            })
        }
        HullCommand::Separate => {
            #[derive(Serialize)]
            struct Separated {
                separated: bool,
                order: MatrixOrder,
                vertex: RatVector,
            }
            #[derive(Serialize)]
            struct Inside {
                separated: bool,
                certificate: crate::CaratheodoryCertificate,
            }
            let doc: SeparateDoc = parse(document)?;
            Ok(match doc.set.separate_from_hull(&doc.a) {
                Ok(s) => CliResponse::json(
                    Status::Ok,
                    &Separated {
                        separated: true,
                        order: s.order,
                        vertex: s.vertex,
                    },
                ),
                Err(Error::InHull(cert)) => CliResponse::json(
                    Status::PropertyFalse,
                    &Inside {
                        separated: false,
                        certificate: *cert,
                    },
                ),
                Err(e) => return Err(input_error(e)),
            })
        }
    }
}

fn semigroup_command(cmd: &SemigroupCommand, document: &str) -> Result<CliResponse, String> {
    match cmd {
        SemigroupCommand::FindOrder => {
            #[derive(Serialize)]
            struct Payload {
                order: MatrixOrder,
            }
            let doc: SemigroupDoc = parse(document)?;
            Ok(match doc.semigroup.find_well_order() {
                PositiveOrder::Order(order) => CliResponse::json(Status::Ok, &Payload { order }),
                PositiveOrder::Witness(w) => {
                    CliResponse::json(Status::PropertyFalse, &WitnessPayload::from(&w))
                }
            })
        }
        SemigroupCommand::Wellorder => {
            #[derive(Serialize)]
            struct Payload {
                verdict: &'static str,
            }
            let doc: SemigroupOrderDoc = parse(document)?;
            Ok(
                match doc
                    .semigroup
                    .is_well_ordered(&doc.order)
                    .map_err(input_error)?
                {
                    WellOrderVerdict::WellOrdered => CliResponse::json(
                        Status::Ok,
                        &Payload {
                            verdict: "well-ordered",
                        },
                    ),
                    WellOrderVerdict::NotWellOrdered(g) => not_well_ordered(&g),
                },
            )
        }
        SemigroupCommand::Enumerate { count, max_count } => {
            #[derive(Serialize)]
            struct Payload {
                count: usize,
                elements: Vec<RatVector>,
            }
            if count > max_count {
                return Err(format!(
                    "`--count` {count} exceeds the limit {max_count} (raise it with --max-count)"
                ));
            }
            let doc: SemigroupOrderDoc = parse(document)?;
            match doc.semigroup.enumerate_ascending(&doc.order, *count) {
                Ok(elements) => Ok(CliResponse::json(
                    Status::Ok,
                    &Payload {
                        count: elements.len(),
                        elements,
                    },
                )),
                Err(Error::NotWellOrdered(g)) => Ok(not_well_ordered(&g)),
                Err(e) => Err(input_error(e)),
            }
        }
        SemigroupCommand::Member { bound } => {
            #[derive(Serialize)]
            struct Member {
                result: &'static str,
                multiplicities: Vec<u64>,
            }
            #[derive(Serialize)]
            struct Unknown {
                result: &'static str,
                bound: usize,
            }
            let doc: SemigroupPointDoc = parse(document)?;
            Ok(
                match doc
                    .semigroup
                    .bounded_membership(&doc.x, *bound)
                    .map_err(input_error)?
                {
                    Membership::Member(multiplicities) => CliResponse::json(
                        Status::Ok,
                        &Member {
                            result: "member",
                            multiplicities,
                        },
                    ),
                    Membership::NotMemberWithinBound => CliResponse::json(
                        Status::PropertyFalse,
                        &Unknown {
                            result: "not-member-within-bound",
                            bound: *bound,
                        },
                    ),
                },
            )
        }
        SemigroupCommand::Min => {
            #[derive(Serialize)]
            struct Payload {
                minimum: RatVector,
            }
            let doc: SemigroupOrderDoc = parse(document)?;
            match doc.semigroup.minimum_element(&doc.order) {
                Ok(minimum) => Ok(CliResponse::json(Status::Ok, &Payload { minimum })),
                Err(Error::NotWellOrdered(g)) => Ok(not_well_ordered(&g)),
                Err(e) => Err(input_error(e)),
            }
        }
    }
}
