//! Text formats read and written by the command line.
//!
//! Every reader takes the whole file contents and reports problems with a
//! 1-based line number. Blank lines are ignored everywhere; `#` starts a
//! comment line in every format except DIMACS, which uses `c`.
//!
//! | file | layout |
//! |------|--------|
//! | group | `degree <m>`, optional `n <n>`, then one generator per line in cycle notation (`()` for the identity) |
//! | representatives | one `0`/`1` string of length `2n` per line |
//! | code | header `code length=<n> size=<M> mindist=<d>`, then one `0`/`1` string of length `n` per line |
//! | orbit list | `rep=<2n bits> size=<k> mindist=<d or inf>` per line |
//! | DIMACS | `c rep <i> <2n bits>` comments, `p edge <N> <E>`, `n <i> <w>` per node, `e <i> <j>` per edge, 1-based |

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};

use orbit_codes::code::VerificationReport;
use orbit_codes::perm::PermError;
use orbit_codes::{
    parse_cycles, Code, Codeword, CompatibilityGraph, Distance, Doubleword, Orbit, PermutationGroup, WeightedGraph,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line, when the problem is tied to one.
    pub line: Option<usize>,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl fmt::Display) -> Self {
        FormatError {
            line: Some(line),
            message: message.to_string(),
        }
    }

    fn whole(message: impl fmt::Display) -> Self {
        FormatError {
            line: None,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for FormatError {}

/// Non-blank lines that do not start with `comment`, with 1-based numbers.
fn content_lines<'a>(text: &'a str, comment: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !l.starts_with(comment))
}

fn keyword_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let mut parts = line.split_whitespace();
    (parts.next() == Some(key)).then(|| parts.next()).flatten().filter(|_| parts.next().is_none())
}

fn parse_number<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, FormatError> {
    s.parse()
        .map_err(|_| FormatError::at(line, format!("{what} must be a non-negative integer, got {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    /// Present when the file declares `n`; the generators were then checked
    /// to be doubleword-compatible.
    pub n: Option<usize>,
    pub group: PermutationGroup,
}

pub fn parse_group(text: &str) -> Result<GroupFile, FormatError> {
    let mut lines = content_lines(text, "#").peekable();
    let (l, first) = lines
        .next()
        .ok_or_else(|| FormatError::whole("group file is empty; expected `degree <m>`"))?;
    let degree: usize = match keyword_value(first, "degree") {
        Some(v) => parse_number(l, "degree", v)?,
        None => return Err(FormatError::at(l, "expected `degree <m>`")),
    };
    if degree == 0 {
        return Err(FormatError::at(l, "degree must be positive"));
    }
    let mut n = None;
    if let Some(&(l, line)) = lines.peek() {
        if let Some(v) = keyword_value(line, "n") {
            let value: usize = parse_number(l, "n", v)?;
            if 2 * value != degree {
                return Err(FormatError::at(l, format!("n = {value} but degree is {degree}; expected degree = 2n")));
            }
            n = Some(value);
            lines.next();
        }
    }
    let mut generators = Vec::new();
    let mut line_of = Vec::new();
    for (l, line) in lines {
        generators.push(parse_cycles(line, degree).map_err(|e| FormatError::at(l, e))?);
        line_of.push(l);
    }
    let group = PermutationGroup::new(generators).map_err(|e| match e {
        PermError::NoGenerators => FormatError::whole("group file lists no generators; write `()` for the trivial group"),
        other => FormatError::whole(other),
    })?;
    if let Some(n) = n {
        group.check_doubleword_compatible(n).map_err(|e| match e {
            PermError::Incompatible { generator, .. } => FormatError::at(line_of[generator - 1], e),
            other => FormatError::whole(other),
        })?;
    }
    Ok(GroupFile { degree, n, group })
}

pub fn write_group(w: &mut (impl Write + ?Sized), group: &PermutationGroup, n: Option<usize>) -> io::Result<()> {
    writeln!(w, "degree {}", group.degree())?;
    if let Some(n) = n {
        writeln!(w, "n {n}")?;
    }
    for g in group.generators() {
        writeln!(w, "{}", g.format_cycles())?;
    }
    Ok(())
}

/// Representatives (or seeds) of half-length `n`, in file order.
pub fn parse_reps(text: &str, n: usize) -> Result<Vec<Doubleword>, FormatError> {
    content_lines(text, "#")
        .map(|(l, line)| {
            if line.len() != 2 * n {
                return Err(FormatError::at(
                    l,
                    format!("expected a doubleword of length {}, got length {}", 2 * n, line.len()),
                ));
            }
            line.parse::<Doubleword>().map_err(|e| FormatError::at(l, e))
        })
        .collect()
}

pub fn write_reps<'a>(
    w: &mut (impl Write + ?Sized),
    comment: &str,
    reps: impl IntoIterator<Item = &'a Doubleword>,
) -> io::Result<()> {
    writeln!(w, "# {comment}")?;
    for x in reps {
        writeln!(w, "{x}")?;
    }
    Ok(())
}

fn header_field<'a>(l: usize, token: Option<&'a str>, key: &str) -> Result<&'a str, FormatError> {
    token
        .and_then(|t| t.strip_prefix(key)?.strip_prefix('='))
        .ok_or_else(|| FormatError::at(l, format!("code header must read `code length=<n> size=<M> mindist=<d>`; missing `{key}=`")))
}

fn parse_distance(l: usize, s: &str) -> Result<Distance, FormatError> {
    if s == "inf" {
        Ok(Distance::Infinite)
    } else {
        Ok(Distance::Finite(parse_number(l, "mindist", s)?))
    }
}

/// A code file. A finite `mindist` in the header becomes the code's claimed
/// minimum distance.
pub fn parse_code(text: &str) -> Result<Code, FormatError> {
    let mut lines = content_lines(text, "#");
    let (l, header) = lines
        .next()
        .ok_or_else(|| FormatError::whole("code file is empty; expected a `code length=... size=... mindist=...` header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("code") {
        return Err(FormatError::at(l, "expected header `code length=<n> size=<M> mindist=<d>`"));
    }
    let length: usize = parse_number(l, "length", header_field(l, tokens.next(), "length")?)?;
    let size: usize = parse_number(l, "size", header_field(l, tokens.next(), "size")?)?;
    let mindist = parse_distance(l, header_field(l, tokens.next(), "mindist")?)?;
    if tokens.next().is_some() {
        return Err(FormatError::at(l, "unexpected text after the code header"));
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut words = Vec::with_capacity(size);
    for (l, line) in lines {
        if line.len() != length {
            return Err(FormatError::at(l, format!("expected a word of length {length}, got length {}", line.len())));
        }
        let w: Codeword = line.parse().map_err(|e| FormatError::at(l, e))?;
        if let Some(first) = seen.insert(w.bits(), l) {
            return Err(FormatError::at(l, format!("word {w} already appears on line {first}")));
        }
        words.push(w.bits());
    }
    if words.len() != size {
        return Err(FormatError::whole(format!("header says size={size} but the file has {} words", words.len())));
    }
    let code = Code::new(length, words).map_err(|e| FormatError::at(l, e))?;
    Ok(match mindist {
        Distance::Finite(d) => code.with_claim(d),
        Distance::Infinite => code,
    })
}

pub fn write_code(w: &mut (impl Write + ?Sized), code: &Code, mindist: Distance) -> io::Result<()> {
    writeln!(w, "code length={} size={} mindist={mindist}", code.length(), code.size())?;
    for c in code.codewords() {
        writeln!(w, "{c}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitRecord {
    pub line: usize,
    pub rep: Doubleword,
    pub size: usize,
    pub mindist: Distance,
}

pub fn parse_orbits(text: &str) -> Result<Vec<OrbitRecord>, FormatError> {
    let mut out: Vec<OrbitRecord> = Vec::new();
    for (l, line) in content_lines(text, "#") {
        let mut rep = None;
        let mut size = None;
        let mut mindist = None;
        for token in line.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| FormatError::at(l, format!("expected key=value, got {token:?}")))?;
            match key {
                "rep" => rep = Some(value.parse::<Doubleword>().map_err(|e| FormatError::at(l, e))?),
                "size" => size = Some(parse_number(l, "size", value)?),
                "mindist" => mindist = Some(parse_distance(l, value)?),
                _ => return Err(FormatError::at(l, format!("unknown key {key:?}"))),
            }
        }
        let (Some(rep), Some(size), Some(mindist)) = (rep, size, mindist) else {
            return Err(FormatError::at(l, "orbit lines need rep=, size= and mindist="));
        };
        if let Some(prev) = out.first() {
            if prev.rep.len() != rep.len() {
                return Err(FormatError::at(l, format!("rep has length {}, earlier reps have length {}", rep.len(), prev.rep.len())));
            }
        }
        out.push(OrbitRecord {
            line: l,
            rep,
            size,
            mindist,
        });
    }
    Ok(out)
}

pub fn write_orbits<'a>(w: &mut (impl Write + ?Sized), orbits: impl IntoIterator<Item = &'a Orbit>) -> io::Result<()> {
    for o in orbits {
        writeln!(w, "rep={} size={} mindist={}", o.rep, o.size, o.intra)?;
    }
    Ok(())
}

/// A graph read from DIMACS, with the representatives named in `c rep`
/// comments when the file has them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub graph: WeightedGraph,
    pub reps: Vec<Option<Doubleword>>,
}

pub fn write_dimacs(w: &mut (impl Write + ?Sized), g: &CompatibilityGraph) -> io::Result<()> {
    for (i, rep) in g.reps.iter().enumerate() {
        writeln!(w, "c rep {} {rep}", i + 1)?;
    }
    write_dimacs_graph(w, &g.graph)
}

pub fn write_dimacs_graph(w: &mut (impl Write + ?Sized), g: &WeightedGraph) -> io::Result<()> {
    writeln!(w, "p edge {} {}", g.node_count(), g.edge_count())?;
    for (i, weight) in g.weights().iter().enumerate() {
        writeln!(w, "n {} {weight}", i + 1)?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

fn node_index(l: usize, s: &str, nodes: usize) -> Result<usize, FormatError> {
    let i: usize = parse_number(l, "node index", s)?;
    if i == 0 || i > nodes {
        return Err(FormatError::at(l, format!("node {i} is outside 1..={nodes}")));
    }
    Ok(i - 1)
}

/// Reads `p edge` / `p col` files. Nodes without an `n` line weigh 1;
/// repeated edges are accepted.
pub fn parse_dimacs(text: &str) -> Result<DimacsGraph, FormatError> {
    let mut graph: Option<WeightedGraph> = None;
    let mut declared_edges = 0usize;
    let mut weights: Vec<u64> = Vec::new();
    let mut pending_reps: Vec<(usize, usize, Doubleword)> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut nodes = 0usize;
    for (l, line) in content_lines(text, "%") {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["c", "rep", i, bits] => {
                let i: usize = parse_number(l, "node index", i)?;
                let rep = bits.parse::<Doubleword>().map_err(|e| FormatError::at(l, e))?;
                pending_reps.push((l, i, rep));
            }
            ["c", ..] => {}
            ["p", kind, n, e] => {
                if graph.is_some() {
                    return Err(FormatError::at(l, "second problem line"));
                }
                if *kind != "edge" && *kind != "col" {
                    return Err(FormatError::at(l, format!("unsupported problem type {kind:?}")));
                }
                nodes = parse_number(l, "node count", n)?;
                declared_edges = parse_number(l, "edge count", e)?;
                weights = vec![1; nodes];
                graph = Some(WeightedGraph::new(Vec::new()));
            }
            ["n", i, w] if graph.is_some() => {
                let i = node_index(l, i, nodes)?;
                weights[i] = parse_number(l, "weight", w)?;
            }
            ["e", i, j] if graph.is_some() => {
                let (i, j) = (node_index(l, i, nodes)?, node_index(l, j, nodes)?);
                if i == j {
                    return Err(FormatError::at(l, format!("self-loop on node {}", i + 1)));
                }
                edges.push((l, i, j));
            }
            ["n" | "e", ..] if graph.is_none() => {
                return Err(FormatError::at(l, "node or edge line before the `p edge` line"));
            }
            _ => return Err(FormatError::at(l, format!("unrecognised line {line:?}"))),
        }
    }
    if graph.is_none() {
        return Err(FormatError::whole("missing `p edge <nodes> <edges>` line"));
    }
    let mut graph = WeightedGraph::new(weights);
    for (l, i, j) in edges {
        graph.add_edge(i, j).map_err(|e| FormatError::at(l, e))?;
    }
    if graph.edge_count() != declared_edges {
        log::warn!(
            "problem line declares {declared_edges} edges, file lists {} distinct edges",
            graph.edge_count()
        );
    }
    let mut reps = vec![None; nodes];
    for (l, i, rep) in pending_reps {
        if i == 0 || i > nodes {
            return Err(FormatError::at(l, format!("rep comment names node {i}, outside 1..={nodes}")));
        }
        reps[i - 1] = Some(rep);
    }
    Ok(DimacsGraph { graph, reps })
}

fn method_name(m: orbit_codes::code::Method) -> &'static str {
    use orbit_codes::code::Method;
    match m {
        Method::Pairwise => "pairwise",
        Method::Neighbourhood => "neighbourhood",
        Method::OrbitReduced => "orbit-reduced",
    }
}

/// A `#` summary line followed by `key=value` lines.
pub fn write_report(w: &mut (impl Write + ?Sized), title: &str, r: &VerificationReport) -> io::Result<()> {
    writeln!(
        w,
        "# {title}: length {}, size {}, minimum distance {} ({})",
        r.length,
        r.size,
        r.min_distance,
        method_name(r.method)
    )?;
    writeln!(w, "length={}", r.length)?;
    writeln!(w, "size={}", r.size)?;
    writeln!(w, "mindist={}", r.min_distance)?;
    writeln!(w, "method={}", method_name(r.method))?;
    if let Some((a, b)) = r.witness {
        writeln!(w, "witness_a={a}")?;
        writeln!(w, "witness_b={b}")?;
    }
    for (i, o) in r.orbits.iter().enumerate() {
        writeln!(w, "orbit={} rep={} size={} mindist={}", i + 1, o.rep, o.size, o.intra)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbit_codes::{verify_code, DoublewordAction, EnumerateOptions, VerifyMode};

    fn to_string(f: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn group_file_round_trip() {
        let text = "# cyclic\ndegree 6\nn 3\n(1 2 3)(4 5 6)\n\n(1 4)\n";
        let g = parse_group(text).unwrap();
        assert_eq!((g.degree, g.n), (6, Some(3)));
        assert_eq!(g.group.generators().len(), 2);
        let again = to_string(|w| write_group(w, &g.group, g.n));
        assert_eq!(again, "degree 6\nn 3\n(1 2 3)(4 5 6)\n(1 4)\n");
        assert_eq!(parse_group(&again).unwrap(), g);
    }

    #[test]
    fn group_file_errors_carry_lines() {
        let e = parse_group("degree 4\nn 2\n(1 2)\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        let e = parse_group("degree 4\n(1 5)\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_group("\n# only comments\n").unwrap_err();
        assert_eq!(e.line, None);
        let e = parse_group("degree 4\nn 3\n()\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(parse_group("degree 4\n").unwrap_err().message.contains("no generators"));
        // without `n` there is no compatibility check
        assert!(parse_group("degree 4\n(1 2)\n").is_ok());
        assert!(parse_group("degree 4\n()\n").unwrap().group.generators()[0].is_identity());
    }

    #[test]
    fn reps_file() {
        let reps = parse_reps("# seeds\n000111\n\n101010\n", 3).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[1].to_string(), "101010");
        assert_eq!(parse_reps("000111\n0001\n", 3).unwrap_err().line, Some(2));
        assert_eq!(parse_reps("000111\n000000\n", 3).unwrap_err().line, Some(2));
        assert!(parse_reps("# nothing\n", 3).unwrap().is_empty());
    }

    #[test]
    fn code_file_round_trip() {
        let code = Code::from_codewords(3, ["111", "000"].map(|s| s.parse().unwrap())).unwrap();
        let text = to_string(|w| write_code(w, &code, Distance::Finite(3)));
        assert_eq!(text, "code length=3 size=2 mindist=3\n000\n111\n");
        let back = parse_code(&text).unwrap();
        assert_eq!(back.words(), code.words());
        assert_eq!(back.claimed_min_distance(), Some(3));
        let single = parse_code("code length=2 size=1 mindist=inf\n01\n").unwrap();
        assert_eq!(single.claimed_min_distance(), None);
    }

    #[test]
    fn code_file_errors() {
        assert_eq!(parse_code("code length=3 size=2 mindist=1\n000\n00\n").unwrap_err().line, Some(3));
        let dup = parse_code("code length=2 size=2 mindist=1\n01\n# x\n01\n").unwrap_err();
        assert_eq!(dup.line, Some(4));
        assert!(dup.message.contains("line 2"));
        assert!(parse_code("code length=2 size=3 mindist=1\n01\n10\n").unwrap_err().message.contains("size=3"));
        assert_eq!(parse_code("code length=2 mindist=1\n").unwrap_err().line, Some(1));
        assert_eq!(parse_code("words\n").unwrap_err().line, Some(1));
    }

    #[test]
    fn orbit_list_round_trip() {
        let g = PermutationGroup::new(vec![parse_cycles("(1 2 3)(4 5 6)", 6).unwrap()]).unwrap();
        let a = DoublewordAction::new(&g, 3).unwrap();
        let orbits = a.enumerate_orbit_reps(&EnumerateOptions::default()).unwrap();
        let text = to_string(|w| write_orbits(w, &orbits));
        assert!(text.starts_with("rep=000111 size=1 mindist=inf\nrep=001110 size=3 mindist=2\n"));
        let back = parse_orbits(&text).unwrap();
        assert_eq!(back.len(), orbits.len());
        for (r, o) in back.iter().zip(&orbits) {
            assert_eq!((r.rep, r.size, r.mindist), (o.rep, o.size, o.intra));
        }
        assert_eq!(parse_orbits("rep=000111 size=1\n").unwrap_err().line, Some(1));
        assert_eq!(parse_orbits("rep=000111 size=1 mindist=inf\nrep=0011 size=1 mindist=inf\n").unwrap_err().line, Some(2));
    }

    #[test]
    fn dimacs_layout() {
        assert_eq!(to_string(|w| write_dimacs_graph(w, &WeightedGraph::new(vec![]))), "p edge 0 0\n");
        let mut g = WeightedGraph::new(vec![3, 5]);
        g.add_edge(0, 1).unwrap();
        let text = to_string(|w| write_dimacs_graph(w, &g));
        assert_eq!(text, "p edge 2 1\nn 1 3\nn 2 5\ne 1 2\n");
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.reps, [None, None]);
    }

    #[test]
    fn dimacs_third_party_input() {
        let text = "c from elsewhere\np col 3 3\ne 1 2\ne 2 1\ne 2 3\n";
        let g = parse_dimacs(text).unwrap().graph;
        assert_eq!(g.weights(), [1, 1, 1]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err().line, Some(2));
        assert_eq!(parse_dimacs("p edge 2 1\ne 2 2\n").unwrap_err().line, Some(2));
        assert_eq!(parse_dimacs("e 1 2\n").unwrap_err().line, Some(1));
        assert_eq!(parse_dimacs("p edge 2 0\nx\n").unwrap_err().line, Some(2));
        assert!(parse_dimacs("c nothing\n").is_err());
    }

    #[test]
    fn report_lines() {
        let code = Code::from_codewords(3, ["111", "000"].map(|s| s.parse().unwrap())).unwrap();
        let r = verify_code(&code, VerifyMode::Pairwise).unwrap();
        let text = to_string(|w| write_report(w, "code", &r));
        assert_eq!(
            text,
            "# code: length 3, size 2, minimum distance 3 (pairwise)\n\
             length=3\nsize=2\nmindist=3\nmethod=pairwise\nwitness_a=000\nwitness_b=111\n"
        );
    }
}
