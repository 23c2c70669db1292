#include "ppm/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ppm {

namespace {

using nlohmann::json;

constexpr char kRawTag = '\x01';

// Keeps the source text of every non-integer number so it parses exactly.
class ExactSax : public nlohmann::detail::json_sax_dom_parser<json> {
 public:
  using json_sax_dom_parser::json_sax_dom_parser;

  bool number_float(double, const std::string& raw) {
    std::string tagged = std::string(1, kRawTag) + raw;
    return json_sax_dom_parser::string(tagged);
  }
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

json parse_json(std::string_view text) {
  json root;
  ExactSax sax(root, true);
  try {
    if (!json::sax_parse(text.begin(), text.end(), &sax)) bad("malformed JSON");
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return root;
}

const json& field(const json& object, const char* key) {
  if (!object.is_object()) bad(std::string("expected an object holding '") + key + "'");
  const auto it = object.find(key);
  if (it == object.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Rational to_rational(const json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
    return Rational(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (!s.empty() && s.front() == kRawTag) return parse_rational(std::string_view(s).substr(1));
    return parse_rational(s);
  }
  bad("expected a number");
}

int to_int(const json& value) {
  if (!value.is_number_integer()) bad("expected an integer");
  const auto v = value.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad("integer out of range");
  return static_cast<int>(v);
}

const std::string& to_str(const json& value) {
  if (!value.is_string()) bad("expected a string");
  return value.get_ref<const std::string&>();
}

const json& array(const json& value, const char* what) {
  if (!value.is_array()) bad(std::string("expected an array for ") + what);
  return value;
}

json from_rational(const Rational& value) {
  if (denominator(value) == 1) {
    const BigInt& num = numerator(value);
    if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
      return json(num.convert_to<std::int64_t>());
    }
  }
  if (is_short_decimal(value, 15)) return json(to_double(value));
  return json(to_text(value));
}

StateTable read_table(const json& value, const std::vector<int>& counts, int m) {
  const json& rows = array(value, "a tensor");
  if (static_cast<int>(rows.size()) != m) bad("tensor has the wrong number of samples");
  StateTable table(m, counts);
  for (int p = 0; p < m; ++p) {
    const json& chars = array(rows[p], "a sample");
    if (chars.size() != counts.size()) bad("sample " + std::to_string(p) + " has the wrong character count");
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const json& states = array(chars[c], "a character");
      if (static_cast<int>(states.size()) != counts[c]) {
        bad("sample " + std::to_string(p) + ", character " + std::to_string(c) + " has the wrong state count");
      }
      for (int i = 0; i < counts[c]; ++i) table(p, static_cast<int>(c), i) = to_rational(states[i]);
    }
  }
  return table;
}

json write_table(const StateTable& table) {
  json rows = json::array();
  for (int p = 0; p < table.num_samples(); ++p) {
    json chars = json::array();
    for (int c = 0; c < table.num_characters(); ++c) {
      json states = json::array();
      for (const auto& v : table.row(p, c)) states.push_back(from_rational(v));
      chars.push_back(std::move(states));
    }
    rows.push_back(std::move(chars));
  }
  return rows;
}

json edges_json(const CloneTree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back(json::array({vertex_text(e.parent), vertex_text(e.child)}));
  return edges;
}

CloneTree read_edges(const json& value) {
  std::vector<Edge> edges;
  for (const auto& e : array(value, "edges")) {
    if (!e.is_array() || e.size() != 2) bad("an edge is a pair of vertices");
    edges.push_back({parse_vertex(to_str(e[0])), parse_vertex(to_str(e[1]))});
  }
  try {
    return CloneTree(std::move(edges));
  } catch (const Error& err) {
    bad(std::string("invalid tree: ") + err.what());
  }
}

json usage_json(const UsageMatrix& usage) {
  json columns = json::array();
  for (const auto v : usage.columns()) columns.push_back(vertex_text(v));
  json rows = json::array();
  for (int p = 0; p < usage.num_samples(); ++p) {
    json row = json::array();
    for (std::size_t k = 0; k < usage.columns().size(); ++k) row.push_back(from_rational(usage(p, static_cast<int>(k))));
    rows.push_back(std::move(row));
  }
  return json{{"columns", columns}, {"rows", rows}};
}

UsageMatrix read_usage(const json& value) {
  std::vector<CharStatePair> columns;
  for (const auto& c : array(field(value, "columns"), "columns")) columns.push_back(parse_vertex(to_str(c)));
  if (!std::is_sorted(columns.begin(), columns.end())) bad("usage columns must be in vertex order");
  const json& rows = array(field(value, "rows"), "rows");
  UsageMatrix usage(static_cast<int>(rows.size()), columns);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const json& row = array(rows[p], "a usage row");
    if (row.size() != columns.size()) bad("usage row has the wrong length");
    for (std::size_t k = 0; k < columns.size(); ++k) usage(static_cast<int>(p), static_cast<int>(k)) = to_rational(row[k]);
  }
  return usage;
}

std::vector<int> int_list(const json& value, const char* what) {
  std::vector<int> out;
  for (const auto& v : array(value, what)) out.push_back(to_int(v));
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

int TensorDocument::num_samples() const {
  if (frequencies) return frequencies->num_samples();
  if (intervals) return intervals->num_samples();
  return 0;
}

std::string vertex_text(CharStatePair v) { return to_string(v); }

CharStatePair parse_vertex(std::string_view text) {
  if (text == "root") return CharStatePair::root();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad("malformed vertex '" + std::string(text) + "'");
  int c = 0;
  int s = 0;
  const auto a = std::from_chars(text.data(), text.data() + colon, c);
  const auto b = std::from_chars(text.data() + colon + 1, text.data() + text.size(), s);
  if (a.ec != std::errc() || a.ptr != text.data() + colon || b.ec != std::errc() ||
      b.ptr != text.data() + text.size() || c < 0 || s < 0) {
    bad("malformed vertex '" + std::string(text) + "'");
  }
  return CharStatePair::of(c, s);
}

TensorDocument parse_tensor_json(std::string_view text) {
  const json root = parse_json(text);
  TensorDocument doc;
  const int m = to_int(field(root, "m"));
  if (m < 1) bad("m must be positive");
  std::vector<int> counts;
  for (const auto& ch : array(field(root, "characters"), "characters")) {
    doc.names.push_back(ch.contains("name") ? to_str(ch["name"]) : "c" + std::to_string(doc.names.size()));
    const int k = to_int(field(ch, "states"));
    std::vector<int> parent;
    for (const auto& p : array(field(ch, "state_tree_parent"), "state_tree_parent")) {
      parent.push_back(p.is_null() ? -1 : to_int(p));
    }
    if (static_cast<int>(parent.size()) != k) bad("state_tree_parent needs one entry per state");
    doc.state_trees.emplace_back(std::move(parent));
    counts.push_back(k);
    if (ch.contains("labels")) {
      doc.state_labels.push_back(int_list(ch["labels"], "labels"));
      if (static_cast<int>(doc.state_labels.back().size()) != k) bad("labels needs one entry per state");
    }
  }
  if (!doc.state_labels.empty() && doc.state_labels.size() != counts.size()) {
    bad("labels must be given for every character or none");
  }
  if (root.contains("f")) {
    doc.frequencies = read_table(root["f"], counts, m);
    validate_tensor(*doc.frequencies);
  } else if (root.contains("f_lb") && root.contains("f_ub")) {
    doc.intervals = FrequencyIntervalTensor{read_table(root["f_lb"], counts, m), read_table(root["f_ub"], counts, m)};
    validate_intervals(*doc.intervals);
  } else {
    bad("tensor file needs 'f' or both 'f_lb' and 'f_ub'");
  }
  return doc;
}

std::string write_tensor_json(const TensorDocument& doc) {
  json root;
  root["m"] = doc.num_samples();
  json chars = json::array();
  for (std::size_t c = 0; c < doc.state_trees.size(); ++c) {
    json parents = json::array();
    for (int p : doc.state_trees[c].parents()) parents.push_back(p < 0 ? json(nullptr) : json(p));
    json ch{{"name", doc.names[c]}, {"states", doc.state_trees[c].num_states()}, {"state_tree_parent", parents}};
    if (!doc.state_labels.empty()) ch["labels"] = doc.state_labels[c];
    chars.push_back(std::move(ch));
  }
  root["characters"] = std::move(chars);
  if (doc.frequencies) root["f"] = write_table(*doc.frequencies);
  if (doc.intervals) {
    root["f_lb"] = write_table(doc.intervals->lower);
    root["f_ub"] = write_table(doc.intervals->upper);
  }
  return root.dump(2) + "\n";
}

MeasurementTable parse_measurements_tsv(std::string_view text) {
  static const std::vector<std::string> kColumns{"sample_id", "locus_id", "vaf",   "vaf_lb", "vaf_ub",
                                                 "mu0",       "muLOH",    "muSCD", "muSCA"};
  MeasurementTable table;
  std::map<std::string, int> column;
  std::map<std::string, std::size_t> sample_index;
  std::map<std::string, std::size_t> locus_index;
  std::map<std::pair<std::size_t, std::size_t>, SampleMeasurement> cells;
  std::size_t line_no = 0;
  bool header = true;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (header) {
      for (std::size_t k = 0; k < fields.size(); ++k) column[std::string(fields[k])] = static_cast<int>(k);
      for (const auto& name : kColumns) {
        if (!column.contains(name)) bad("measurement table lacks column '" + name + "'");
      }
      header = false;
      continue;
    }
    if (fields.size() != column.size()) bad("line " + std::to_string(line_no) + " has the wrong field count");
    auto get = [&](const std::string& name) { return fields[column.at(name)]; };
    auto number = [&](const std::string& name) {
      try {
        return parse_rational(get(name));
      } catch (const Error& e) {
        bad("line " + std::to_string(line_no) + ", column " + name + ": " + e.what());
      }
    };
    const std::string sample(get("sample_id"));
    const std::string locus(get("locus_id"));
    if (!sample_index.contains(sample)) {
      sample_index[sample] = table.samples.size();
      table.samples.push_back(sample);
    }
    if (!locus_index.contains(locus)) {
      locus_index[locus] = table.loci.size();
      table.loci.push_back({locus, {}});
    }
    SampleMeasurement s;
    s.vaf = number("vaf");
    s.vaf_lb = get("vaf_lb").empty() ? s.vaf : number("vaf_lb");
    s.vaf_ub = get("vaf_ub").empty() ? s.vaf : number("vaf_ub");
    s.mu = {number("mu0"), number("muLOH"), number("muSCD"), number("muSCA")};
    if (s.vaf < 0 || s.vaf > 1 || s.vaf_lb > s.vaf_ub || s.vaf_lb < 0 || s.vaf_ub > 1) {
      bad("line " + std::to_string(line_no) + ": VAF values must lie in [0, 1] with lb <= ub");
    }
    if (s.mu.mu0 < 0 || s.mu.loh < 0 || s.mu.scd < 0 || s.mu.sca < 0 ||
        s.mu.mu0 + s.mu.loh + s.mu.scd + s.mu.sca != 1) {
      bad("line " + std::to_string(line_no) + ": proportions must be nonnegative and sum to 1");
    }
    const auto key = std::make_pair(locus_index[locus], sample_index[sample]);
    if (cells.contains(key)) bad("line " + std::to_string(line_no) + ": duplicate sample/locus pair");
    cells[key] = std::move(s);
  }
  if (header) bad("measurement table is empty");
  for (std::size_t c = 0; c < table.loci.size(); ++c) {
    for (std::size_t p = 0; p < table.samples.size(); ++p) {
      const auto it = cells.find({c, p});
      if (it == cells.end()) bad("locus " + table.loci[c].name + " lacks sample " + table.samples[p]);
      table.loci[c].samples.push_back(it->second);
    }
  }
  return table;
}

std::string write_measurements_tsv(const MeasurementTable& table) {
  std::ostringstream out;
  out << "sample_id\tlocus_id\tvaf\tvaf_lb\tvaf_ub\tmu0\tmuLOH\tmuSCD\tmuSCA\n";
  for (std::size_t p = 0; p < table.samples.size(); ++p) {
    for (const auto& locus : table.loci) {
      const auto& s = locus.samples.at(p);
      out << table.samples[p] << '\t' << locus.name << '\t' << to_text(s.vaf) << '\t' << to_text(s.vaf_lb) << '\t'
          << to_text(s.vaf_ub) << '\t' << to_text(s.mu.mu0) << '\t' << to_text(s.mu.loh) << '\t'
          << to_text(s.mu.scd) << '\t' << to_text(s.mu.sca) << '\n';
    }
  }
  return out.str();
}

Truth parse_truth_json(std::string_view text) {
  const json root = parse_json(text);
  Truth truth;
  for (const auto& ch : array(field(root, "characters"), "characters")) {
    truth.names.push_back(to_str(field(ch, "name")));
    truth.tree_ids.push_back(ch.contains("catalog_tree") ? to_int(ch["catalog_tree"]) : -1);
  }
  truth.tree = read_edges(field(root, "edges"));
  if (root.contains("usage")) truth.usage = read_usage(root["usage"]);
  return truth;
}

std::string write_truth_json(const Truth& truth) {
  json root;
  json chars = json::array();
  for (std::size_t c = 0; c < truth.names.size(); ++c) {
    json ch{{"name", truth.names[c]}};
    if (c < truth.tree_ids.size() && truth.tree_ids[c] >= 0) ch["catalog_tree"] = truth.tree_ids[c];
    chars.push_back(std::move(ch));
  }
  root["characters"] = std::move(chars);
  root["edges"] = edges_json(truth.tree);
  if (truth.usage) root["usage"] = usage_json(*truth.usage);
  return root.dump(2) + "\n";
}

SolutionDocument parse_solutions_json(std::string_view text) {
  const json root = parse_json(text);
  SolutionDocument doc;
  doc.mode = to_str(field(root, "mode"));
  doc.truncated = field(root, "truncated").get<bool>();
  for (const auto& n : array(field(root, "names"), "names")) doc.names.push_back(to_str(n));
  if (root.contains("dropped")) doc.dropped = int_list(root["dropped"], "dropped");
  for (const auto& c : array(field(root, "combinations"), "combinations")) {
    StoredCombination comb;
    comb.id = to_str(field(c, "id"));
    comb.tree_ids = int_list(field(c, "catalog_trees"), "catalog_trees");
    comb.loci = int_list(field(c, "loci"), "loci");
    comb.solutions = static_cast<std::size_t>(to_int(field(c, "solutions")));
    comb.truncated = field(c, "truncated").get<bool>();
    doc.combinations.push_back(std::move(comb));
  }
  for (const auto& s : array(field(root, "solutions"), "solutions")) {
    StoredSolution sol;
    sol.combination = to_str(field(s, "combination"));
    sol.tree = read_edges(field(s, "edges"));
    if (s.contains("usage")) sol.usage = read_usage(s["usage"]);
    if (s.contains("witness")) {
      const json& w = s["witness"];
      sol.witness_loci = int_list(field(w, "loci"), "loci");
      for (const auto& st : array(field(w, "states"), "states")) sol.witness_states.push_back(int_list(st, "states"));
      for (const auto& row : array(field(w, "f"), "f")) {
        std::vector<std::vector<Rational>> sample;
        for (const auto& ch : array(row, "witness row")) {
          std::vector<Rational> values;
          for (const auto& v : array(ch, "witness values")) values.push_back(to_rational(v));
          sample.push_back(std::move(values));
        }
        sol.witness.push_back(std::move(sample));
      }
    }
    doc.solutions.push_back(std::move(sol));
  }
  return doc;
}

std::string write_solutions_json(const SolutionDocument& doc) {
  json root;
  root["mode"] = doc.mode;
  root["truncated"] = doc.truncated;
  root["count"] = doc.solutions.size();
  root["names"] = doc.names;
  root["dropped"] = doc.dropped;
  json combs = json::array();
  for (const auto& c : doc.combinations) {
    combs.push_back(json{{"id", c.id},
                         {"catalog_trees", c.tree_ids},
                         {"loci", c.loci},
                         {"solutions", c.solutions},
                         {"truncated", c.truncated}});
  }
  root["combinations"] = std::move(combs);
  json sols = json::array();
  for (const auto& s : doc.solutions) {
    json item{{"combination", s.combination}, {"edges", edges_json(s.tree)}};
    if (s.usage) item["usage"] = usage_json(*s.usage);
    if (!s.witness.empty()) {
      json f = json::array();
      for (const auto& sample : s.witness) {
        json row = json::array();
        for (const auto& ch : sample) {
          json values = json::array();
          for (const auto& v : ch) values.push_back(from_rational(v));
          row.push_back(std::move(values));
        }
        f.push_back(std::move(row));
      }
      item["witness"] = json{{"loci", s.witness_loci}, {"states", s.witness_states}, {"f", std::move(f)}};
    }
    sols.push_back(std::move(item));
  }
  root["solutions"] = std::move(sols);
  return root.dump(2) + "\n";
}

std::string write_usage_tsv(const UsageMatrix& usage, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "sample";
  for (const auto v : usage.columns()) {
    out << '\t';
    if (v.is_root()) {
      out << "root";
    } else {
      out << (v.character < static_cast<int>(names.size()) ? names[v.character] : std::to_string(v.character))
          << ':' << v.state;
    }
  }
  out << '\n';
  for (int p = 0; p < usage.num_samples(); ++p) {
    out << p;
    for (std::size_t k = 0; k < usage.columns().size(); ++k) out << '\t' << to_text(usage(p, static_cast<int>(k)));
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::InvalidConfig, "failed writing " + path);
}

}  // namespace ppm
