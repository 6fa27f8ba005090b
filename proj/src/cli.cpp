#include "braidforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "braidforge/corpus.hpp"
#include "braidforge/json_io.hpp"
#include "braidforge/render.hpp"
#include "braidforge/transit.hpp"

namespace braidforge {

namespace {

struct Usage {
  std::string message;
};

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Found: return kExitOk;
    case Outcome::NotAdmitted: return kExitNotAdmitted;
    case Outcome::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

BraidWord word_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_word(text);
  } catch (const Error& e) {
    throw Usage{flag + ": " + e.what()};
  }
}

TargetMove move_flag(const std::string& text) {
  const auto m = target_move_from_string(text);
  if (!m) throw Usage{"--move: unknown move \"" + text + "\" (destab, thin-exchange, flype, double-destab)"};
  return *m;
}

struct Options {
  std::string move, word, word_a, word_b, grid, cert, trace, frames, out_path, csv, json;
  std::string format = "ascii";
  std::optional<std::size_t> max_states, max_moves;
  std::uint64_t seed = 1;
  int count = 10;
  bool no_timing = false;
  bool as_json = false;
};

SearchBudget budget_of(const Options& o) {
  SearchBudget b = default_budget();
  if (o.max_states) b.max_states = *o.max_states;
  if (o.max_moves) b.max_moves_per_certificate = *o.max_moves;
  return b;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_text_file(o.out_path, text);
  }
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << to_string(v.outcome) << " states=" << v.states_visited << " roots=" << v.roots_explored;
  if (v.certificate) out << " moves=" << v.certificate->moves.size();
  if (!v.note.empty()) out << " (" << v.note << ')';
  out << '\n';
}

int cmd_recognize(const Options& o, std::ostream& out) {
  const TargetMove kind = move_flag(o.move);
  const BraidWord w = word_flag("--word", o.word);
  const Verdict v = recognize(kind, w, budget_of(o));
  if (o.as_json) {
    out << verdict_to_json(v, kind, !o.no_timing);
  } else {
    print_verdict(out, v);
    if (v.certificate) out << "terminal " << format_word(v.certificate->claim.form_word) << '\n';
  }
  if (v.certificate && !o.trace.empty()) write_text_file(o.trace, certificate_to_json(*v.certificate));
  if (v.certificate && !o.frames.empty()) render_frames(*v.certificate, o.frames);
  return exit_for(v.outcome);
}

int cmd_related(const Options& o, std::ostream& out) {
  const TargetMove kind = move_flag(o.move);
  if (kind == TargetMove::Destabilization) throw Usage{"--move: related takes thin-exchange, flype or double-destab"};
  const BraidWord a = word_flag("--word-a", o.word_a);
  const BraidWord b = word_flag("--word-b", o.word_b);
  Verdict v;
  try {
    v = related_by_move(a, b, kind, budget_of(o));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    v.outcome = Outcome::Inconclusive;
    v.note = e.what();
  }
  if (o.as_json) {
    out << verdict_to_json(v, kind, !o.no_timing);
  } else {
    print_verdict(out, v);
    if (v.related_word) out << "via " << format_word(*v.related_word) << '\n';
  }
  if (v.certificate && !o.trace.empty()) write_text_file(o.trace, certificate_to_json(*v.certificate));
  return exit_for(v.outcome);
}

int cmd_convert(const Options& o, std::ostream& out) {
  if (!o.word.empty() == !o.grid.empty()) throw Usage{"convert needs exactly one of --word or --grid"};
  if (!o.word.empty()) {
    emit(o, out, grid_to_json(braid_to_grid(word_flag("--word", o.word)).first));
  } else {
    const auto [g, sc] = grid_from_json(read_file(o.grid));
    emit(o, out, format_word(flatten(g)) + "\n");
  }
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  if (o.cert.empty()) throw Usage{"replay needs --cert <file>"};
  const MoveCertificate c = certificate_from_json(read_file(o.cert));
  const ReplayResult r = replay_certificate(c);
  if (r.ok()) {
    out << "ok moves=" << c.moves.size() << '\n';
    return kExitOk;
  }
  out << "error " << to_string(r.error);
  if (r.step >= 0) out << " step=" << r.step;
  if (!r.detail.empty()) out << " (" << r.detail << ')';
  out << '\n';
  return kExitNotAdmitted;
}

int cmd_render(const Options& o, std::ostream& out) {
  if (o.format != "ascii" && o.format != "svg") throw Usage{"--format: expected ascii or svg"};
  const RenderFormat f = o.format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii;
  const int sources = !o.word.empty() + !o.grid.empty() + !o.cert.empty();
  if (sources != 1) throw Usage{"render needs exactly one of --word, --grid or --cert"};
  if (!o.cert.empty()) {
    const MoveCertificate c = certificate_from_json(read_file(o.cert));
    if (!o.frames.empty()) {
      const auto paths = render_frames(c, o.frames);
      out << paths.size() << " frames written to " << o.frames << '\n';
      return kExitOk;
    }
    const GridState s = terminal_state(c);
    emit(o, out, render_diagram(s.grid, f, s.config));
    return kExitOk;
  }
  if (!o.frames.empty()) throw Usage{"--frames: needs --cert"};
  if (!o.word.empty()) {
    emit(o, out, render_diagram(braid_to_grid(word_flag("--word", o.word)).first, f));
  } else {
    const auto [g, sc] = grid_from_json(read_file(o.grid));
    emit(o, out, render_diagram(g, f, sc));
  }
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.count < 0) throw Usage{"--count: must be nonnegative"};
  std::vector<TargetMove> kinds;
  if (o.move.empty()) {
    kinds = {TargetMove::Destabilization, TargetMove::ThinExchange, TargetMove::ElementaryFlype,
             TargetMove::DoubleDestabilization};
  } else {
    kinds = {move_flag(o.move)};
  }
  std::vector<InstanceSpec> specs;
  for (TargetMove k : kinds) {
    const auto part = default_suite(k, o.count, o.seed);
    specs.insert(specs.end(), part.begin(), part.end());
  }
  const BenchReport rep = run_benchmark_suite(specs, budget_of(o));
  if (!o.csv.empty()) write_text_file(o.csv, report_csv(rep, !o.no_timing));
  if (!o.json.empty()) write_text_file(o.json, report_json(rep, !o.no_timing));
  out << "instances=" << rep.rows.size() << " found=" << rep.found << " notAdmitted=" << rep.not_admitted
      << " inconclusive=" << rep.inconclusive << " statesP50=" << rep.states.p50 << " statesP90=" << rep.states.p90
      << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"closed-braid move recognition on arc presentations", "braidforge"};
  app.require_subcommand(1);
  Options o;

  auto budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-states", o.max_states, "States per root choice");
    sub->add_option("--max-moves", o.max_moves, "Longest certificate considered");
  };
  auto* rec = app.add_subcommand("recognize", "Decide whether a closed braid admits a move");
  rec->add_option("--move", o.move, "destab | thin-exchange | flype | double-destab")->required();
  rec->add_option("--word", o.word, "Braid word, e.g. \"n=3: 1 2\"")->required();
  rec->add_option("--trace", o.trace, "Write the certificate JSON here");
  rec->add_option("--frames", o.frames, "Write one SVG per certificate step into this directory");
  rec->add_flag("--json", o.as_json, "Print the verdict as JSON");
  rec->add_flag("--no-timing", o.no_timing, "Zero the timing fields");
  budget_flags(rec);

  auto* rel = app.add_subcommand("related", "Decide whether word-b follows from word-a by one move");
  rel->add_option("--move", o.move, "thin-exchange | flype | double-destab")->required();
  rel->add_option("--word-a", o.word_a, "Source braid word")->required();
  rel->add_option("--word-b", o.word_b, "Target braid word")->required();
  rel->add_option("--trace", o.trace, "Write the certificate JSON here");
  rel->add_flag("--json", o.as_json, "Print the verdict as JSON");
  rel->add_flag("--no-timing", o.no_timing, "Zero the timing fields");
  budget_flags(rel);

  auto* conv = app.add_subcommand("convert", "Word to grid JSON, or grid JSON to word");
  conv->add_option("--word", o.word, "Braid word");
  conv->add_option("--grid", o.grid, "Grid JSON file");
  conv->add_option("--out", o.out_path, "Output file (default stdout)");

  auto* rep = app.add_subcommand("replay", "Verify a certificate file");
  rep->add_option("--cert,cert", o.cert, "Certificate JSON file");

  auto* ren = app.add_subcommand("render", "Draw a diagram");
  ren->add_option("--word", o.word, "Braid word");
  ren->add_option("--grid", o.grid, "Grid JSON file");
  ren->add_option("--cert", o.cert, "Certificate JSON file (terminal diagram, or frames)");
  ren->add_option("--format", o.format, "ascii | svg");
  ren->add_option("--frames", o.frames, "Directory for per-step SVG frames (with --cert)");
  ren->add_option("--out", o.out_path, "Output file (default stdout)");

  auto* ben = app.add_subcommand("bench", "Run the seeded benchmark corpus");
  ben->add_option("--move", o.move, "Restrict to one move kind");
  ben->add_option("--count", o.count, "Instances per move kind");
  ben->add_option("--seed", o.seed, "Suite seed");
  ben->add_option("--csv", o.csv, "Write the CSV report here");
  ben->add_option("--json", o.json, "Write the JSON report here");
  ben->add_flag("--no-timing", o.no_timing, "Zero the timing columns");
  budget_flags(ben);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (rec->parsed()) return cmd_recognize(o, out);
    if (rel->parsed()) return cmd_related(o, out);
    if (conv->parsed()) return cmd_convert(o, out);
    if (rep->parsed()) return cmd_replay(o, out);
    if (ren->parsed()) return cmd_render(o, out);
    if (ben->parsed()) return cmd_bench(o, out);
  } catch (const Usage& u) {
    err << "usage error: " << u.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::IoError: return kExitIo;
      case ErrorCode::ParseError:
      case ErrorCode::InvalidDiagram:
      case ErrorCode::EmptyDiagram: return kExitBadInput;
      default: return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace braidforge
