#include "ssp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ssp {

int SspDecomposition::agent_of_place(const std::string& id) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (std::find(agents[i].places.begin(), agents[i].places.end(), id) !=
        agents[i].places.end())
      return (int)i;
  return -1;
}

int SspDecomposition::agent_of_trans(const std::string& id) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (std::find(agents[i].transitions.begin(), agents[i].transitions.end(),
                  id) != agents[i].transitions.end())
      return (int)i;
  return -1;
}

bool SspDecomposition::is_buffer(const std::string& id) const {
  return std::find(buffers.begin(), buffers.end(), id) != buffers.end();
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(line);
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

long long parse_nat(const Line& line, const std::string& tok) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size() || v < 0) fail(line.number, "expected natural, got " + tok);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    fail(line.number, "expected natural, got " + tok);
  }
}

std::vector<std::string> split_ids(const Line& line, const std::string& tok) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : tok) {
    if (ch == ',') {
      if (cur.empty()) fail(line.number, "empty identifier in list");
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.empty()) fail(line.number, "empty identifier in list");
  out.push_back(cur);
  return out;
}

}  // namespace

NetDocument parse_net(const std::string& text) {
  NetDocument doc;
  std::vector<std::pair<std::string, long long>> tokens;
  bool have_decomp = false;
  SspDecomposition decomp;

  for (const Line& line : tokenize(text)) {
    const auto& t = line.tokens;
    const std::string& kw = t[0];
    if (kw == "NET") {
      if (t.size() != 2) fail(line.number, "NET expects one name");
      doc.name = t[1];
    } else if (kw == "PLACE") {
      if (t.size() != 2 && !(t.size() == 4 && t[2] == "MARKING"))
        fail(line.number, "PLACE <id> [MARKING <nat>]");
      try {
        doc.net.add_place(t[1]);
      } catch (const NetError& e) {
        fail(line.number, e.what());
      }
      if (t.size() == 4) tokens.emplace_back(t[1], parse_nat(line, t[3]));
    } else if (kw == "TRANS") {
      if (t.size() != 2 && !(t.size() == 4 && t[2] == "LABEL"))
        fail(line.number, "TRANS <id> [LABEL <string>]");
      try {
        doc.net.add_trans(t[1], t.size() == 4 ? t[3] : "");
      } catch (const NetError& e) {
        fail(line.number, e.what());
      }
    } else if (kw == "ARC") {
      if (!(t.size() == 4 || (t.size() == 6 && t[4] == "WEIGHT")) ||
          t[2] != "->")
        fail(line.number, "ARC <a> -> <b> [WEIGHT <nat>]");
      long long w = t.size() == 6 ? parse_nat(line, t[5]) : 1;
      try {
        doc.net.add_arc(t[1], t[3], w);
      } catch (const NetError& e) {
        fail(line.number, e.what());
      }
    } else if (kw == "AGENT") {
      // AGENT <name> PLACES <id,...> TRANS <id,...> WAIT <place-id>
      if (t.size() != 8 || t[2] != "PLACES" || t[4] != "TRANS" || t[6] != "WAIT")
        fail(line.number, "AGENT <name> PLACES <id,...> TRANS <id,...> WAIT <id>");
      AgentDecl a;
      a.name = t[1];
      a.places = split_ids(line, t[3]);
      a.transitions = split_ids(line, t[5]);
      a.wait = t[7];
      for (const auto& p : a.places)
        if (doc.net.place_id(p) < 0) fail(line.number, "undeclared place " + p);
      for (const auto& tr : a.transitions)
        if (doc.net.trans_id(tr) < 0)
          fail(line.number, "undeclared transition " + tr);
      if (std::find(a.places.begin(), a.places.end(), a.wait) == a.places.end())
        fail(line.number, "waiting place " + a.wait + " not in agent places");
      decomp.agents.push_back(std::move(a));
      have_decomp = true;
    } else if (kw == "BUFFERS") {
      if (t.size() != 2) fail(line.number, "BUFFERS <id,...>");
      for (const auto& b : split_ids(line, t[1])) {
        if (doc.net.place_id(b) < 0) fail(line.number, "undeclared place " + b);
        decomp.buffers.push_back(b);
      }
      have_decomp = true;
    } else {
      fail(line.number, "unknown keyword " + kw);
    }
  }
  doc.m0 = make_marking(doc.net, tokens);
  if (have_decomp) doc.decomposition = std::move(decomp);
  return doc;
}

NetDocument parse_net_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_net(buf.str());
}

std::string serialize_net(const NetDocument& doc) {
  std::ostringstream out;
  out << "NET " << (doc.name.empty() ? "net" : doc.name) << "\n";
  const Net& n = doc.net;
  for (int p = 0; p < n.n_places(); ++p) {
    out << "PLACE " << n.places[p];
    if (doc.m0[p] > 0) out << " MARKING " << doc.m0[p];
    out << "\n";
  }
  for (int t = 0; t < n.n_trans(); ++t) {
    out << "TRANS " << n.transitions[t];
    auto it = n.labels.find(n.transitions[t]);
    if (it != n.labels.end()) out << " LABEL " << it->second;
    out << "\n";
  }
  for (int p = 0; p < n.n_places(); ++p)
    for (int t = 0; t < n.n_trans(); ++t)
      if (n.pre[p][t] > 0) {
        out << "ARC " << n.places[p] << " -> " << n.transitions[t];
        if (n.pre[p][t] != 1) out << " WEIGHT " << n.pre[p][t];
        out << "\n";
      }
  for (int p = 0; p < n.n_places(); ++p)
    for (int t = 0; t < n.n_trans(); ++t)
      if (n.post[p][t] > 0) {
        out << "ARC " << n.transitions[t] << " -> " << n.places[p];
        if (n.post[p][t] != 1) out << " WEIGHT " << n.post[p][t];
        out << "\n";
      }
  if (doc.decomposition) {
    for (const AgentDecl& a : doc.decomposition->agents) {
      out << "AGENT " << a.name << " PLACES ";
      for (std::size_t i = 0; i < a.places.size(); ++i)
        out << (i ? "," : "") << a.places[i];
      out << " TRANS ";
      for (std::size_t i = 0; i < a.transitions.size(); ++i)
        out << (i ? "," : "") << a.transitions[i];
      out << " WAIT " << a.wait << "\n";
    }
    if (!doc.decomposition->buffers.empty()) {
      out << "BUFFERS ";
      for (std::size_t i = 0; i < doc.decomposition->buffers.size(); ++i)
        out << (i ? "," : "") << doc.decomposition->buffers[i];
      out << "\n";
    }
  }
  return out.str();
}

std::string export_dot(const Net& net) {
  std::ostringstream out;
  out << "digraph net {\n";
  for (const auto& p : net.places)
    out << "  \"" << p << "\" [shape=circle];\n";
  for (const auto& t : net.transitions) {
    out << "  \"" << t << "\" [shape=box";
    auto it = net.labels.find(t);
    if (it != net.labels.end()) out << ", label=\"" << t << "/" << it->second << "\"";
    out << "];\n";
  }
  for (int p = 0; p < net.n_places(); ++p)
    for (int t = 0; t < net.n_trans(); ++t) {
      if (net.pre[p][t] > 0) {
        out << "  \"" << net.places[p] << "\" -> \"" << net.transitions[t] << "\"";
        if (net.pre[p][t] != 1) out << " [label=\"" << net.pre[p][t] << "\"]";
        out << ";\n";
      }
      if (net.post[p][t] > 0) {
        out << "  \"" << net.transitions[t] << "\" -> \"" << net.places[p] << "\"";
        if (net.post[p][t] != 1) out << " [label=\"" << net.post[p][t] << "\"]";
        out << ";\n";
      }
    }
  out << "}\n";
  return out.str();
}

std::string export_dot(const ReachGraph& rg) {
  std::ostringstream out;
  out << "digraph reach {\n";
  for (std::size_t v = 0; v < rg.nodes.size(); ++v) {
    out << "  n" << v << " [label=\"";
    bool first = true;
    for (int p = 0; p < rg.net->n_places(); ++p)
      if (rg.nodes[v][p] > 0) {
        if (!first) out << " ";
        first = false;
        if (rg.nodes[v][p] != 1) out << rg.nodes[v][p] << "*";
        out << rg.net->places[p];
      }
    out << "\"];\n";
  }
  for (const Edge& e : rg.edges)
    out << "  n" << e.src << " -> n" << e.dst << " [label=\""
        << rg.net->transitions[e.trans] << "\"];\n";
  out << "}\n";
  return out.str();
}

Report::Section& Report::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back({name, {}});
  return sections.back();
}

void Report::add(const std::string& section_name, const std::string& key,
                 const std::string& value) {
  section(section_name).entries.emplace_back(key, value);
}

void Report::add(const std::string& section_name, const std::string& key,
                 long long value) {
  add(section_name, key, std::to_string(value));
}

std::string Report::str() const {
  std::ostringstream out;
  for (const auto& s : sections) {
    out << "[" << s.name << "]\n";
    for (const auto& [k, v] : s.entries) out << k << " = " << v << "\n";
  }
  return out.str();
}

void add_census(Report& r, const std::string& section, const Census& c) {
  r.add(section, "reachable", (long long)c.reachable);
  r.add(section, "deadlock", (long long)c.deadlock);
  r.add(section, "livelock", (long long)c.livelock);
  r.add(section, "livelock_definition", Census::livelock_definition());
  r.add(section, "livelock_any_dead", (long long)c.livelock_any_dead);
}

}  // namespace ssp
