#pragma once

#include <optional>

#include "ssp/net.hpp"
#include "ssp/reach.hpp"

namespace ssp {

struct AgentDecl {
  std::string name;
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::string wait;  // waiting place id
};

struct SspDecomposition {
  std::vector<AgentDecl> agents;
  std::vector<std::string> buffers;

  // Agent index owning place/transition id, -1 when none.
  int agent_of_place(const std::string& id) const;
  int agent_of_trans(const std::string& id) const;
  bool is_buffer(const std::string& id) const;
};

struct NetDocument {
  std::string name;
  Net net;
  Marking m0;
  std::optional<SspDecomposition> decomposition;
  std::map<std::string, std::string> metadata;
};

// Line-oriented net format:
//   NET <name>
//   PLACE <id> [MARKING <nat>]
//   TRANS <id> [LABEL <string>]
//   ARC <a> -> <b> [WEIGHT <nat>]
//   AGENT <name> PLACES <id,...> TRANS <id,...> WAIT <place-id>
//   BUFFERS <id,...>
// '#' starts a comment; unknown keywords are rejected.
NetDocument parse_net(const std::string& text);
NetDocument parse_net_file(const std::string& path);
std::string serialize_net(const NetDocument& doc);

std::string export_dot(const Net& net);
std::string export_dot(const ReachGraph& rg);

// Structured text report: one "key = value" per line under [section] headers.
struct Report {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections;

  Section& section(const std::string& name);
  void add(const std::string& section_name, const std::string& key,
           const std::string& value);
  void add(const std::string& section_name, const std::string& key,
           long long value);
  std::string str() const;
};

void add_census(Report& r, const std::string& section, const Census& c);

}  // namespace ssp
