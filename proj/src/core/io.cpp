#include "mwelect/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mwelect/errors.hpp"

namespace mwelect {

using nlohmann::json;

int LoadedProfile::m() const {
    return is_symmetric() ? symmetric_profile->m : explicit_profile->m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write '" + tmp + "'");
        out << content;
        if (!out.good()) throw ParseError("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParseError("cannot rename '" + tmp + "' to '" + path + "'");
}

// --------------------------------------------------------------------------
// Native text format
// --------------------------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

LoadedProfile parse_text(const std::string& data) {
    std::istringstream in(data);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line[0] != '#') return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("empty instance file", line_no);
    auto head = tokenize(line);
    if (head.size() < 2) throw ParseError("header needs 'm n [s_default]'", line_no);
    int m = std::stoi(head[0]);
    int n = std::stoi(head[1]);
    LoadedProfile lp;
    lp.s_default = head.size() >= 3 ? std::stoi(head[2]) : 1;

    std::vector<std::vector<CandidateId>> orders;
    std::vector<Rational> weights;
    bool any_weight = false;
    for (int v = 0; v < n; ++v) {
        if (!next_line()) throw ParseError("expected " + std::to_string(n) + " voter lines", line_no);
        auto toks = tokenize(line);
        Rational w(1);
        std::size_t at = 0;
        if (!toks.empty() && toks[0].rfind("w=", 0) == 0) {
            w = Rational::parse(toks[0].substr(2));
            any_weight = true;
            at = 1;
        }
        if (toks.size() - at != static_cast<std::size_t>(m))
            throw ParseError("expected " + std::to_string(m) + " candidate ids", line_no);
        std::vector<CandidateId> order;
        for (; at < toks.size(); ++at) order.push_back(std::stoi(toks[at]));
        orders.push_back(std::move(order));
        weights.push_back(w);
    }
    try {
        lp.explicit_profile = PreferenceProfile::from_orders(
            m, orders, any_weight ? std::move(weights) : std::vector<Rational>{});
    } catch (const ArgError& e) {
        throw ParseError(e.what(), line_no);
    }
    return lp;
}

// --------------------------------------------------------------------------
// PrefLib strict-order-complete (read only)
// --------------------------------------------------------------------------

LoadedProfile parse_preflib(const std::string& data) {
    std::istringstream in(data);
    std::string line;
    int line_no = 0;
    int m = -1;
    std::vector<std::vector<CandidateId>> orders;
    std::vector<Rational> weights;

    std::vector<std::string> body;
    std::vector<int> body_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("NUMBER ALTERNATIVES:");
            if (pos != std::string::npos) m = std::stoi(line.substr(pos + 20));
            continue;
        }
        body.push_back(line);
        body_lines.push_back(line_no);
    }
    if (body.empty()) throw ParseError("no ballots found");

    std::size_t at = 0;
    if (m < 0) {
        // legacy layout: m, then m name lines, then "n,sum,unique", then ballots
        auto first = tokenize(body[0]);
        if (first.size() != 1 || first[0].find(',') != std::string::npos)
            throw ParseError("cannot determine the number of alternatives", body_lines[0]);
        m = std::stoi(first[0]);
        at = 1 + static_cast<std::size_t>(m) + 1;  // skip names and the counts line
        if (at > body.size()) throw ParseError("truncated legacy header", body_lines.back());
    }

    for (; at < body.size(); ++at) {
        std::string b = body[at];
        // "count: ids" or "count, ids"
        std::string count_part, ids_part;
        auto colon = b.find(':');
        if (colon != std::string::npos) {
            count_part = b.substr(0, colon);
            ids_part = b.substr(colon + 1);
        } else {
            auto comma = b.find(',');
            if (comma == std::string::npos)
                throw ParseError("malformed ballot line", body_lines[at]);
            count_part = b.substr(0, comma);
            ids_part = b.substr(comma + 1);
        }
        long long count;
        try {
            count = std::stoll(count_part);
        } catch (...) {
            throw ParseError("malformed ballot count", body_lines[at]);
        }
        if (count <= 0) throw ParseError("ballot count must be positive", body_lines[at]);
        std::vector<CandidateId> order;
        std::string tok;
        std::istringstream ids(ids_part);
        while (std::getline(ids, tok, ',')) {
            if (tok.find('{') != std::string::npos)
                throw ParseError("tied ballots are not supported", body_lines[at]);
            try {
                order.push_back(std::stoi(tok) - 1);  // PrefLib ids are 1-based
            } catch (...) {
                throw ParseError("malformed candidate id", body_lines[at]);
            }
        }
        if (static_cast<int>(order.size()) != m)
            throw ParseError("ballot must rank all " + std::to_string(m) + " alternatives",
                             body_lines[at]);
        orders.push_back(std::move(order));
        weights.push_back(Rational(count));
    }
    LoadedProfile lp;
    try {
        lp.explicit_profile = PreferenceProfile::from_orders(m, orders, std::move(weights));
    } catch (const ArgError& e) {
        throw ParseError(e.what());
    }
    return lp;
}

// --------------------------------------------------------------------------
// JSON formats
// --------------------------------------------------------------------------

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected an integer or \"p/q\" string");
}

LoadedProfile parse_json_profile(const json& j) {
    LoadedProfile lp;
    lp.s_default = j.value("s_default", 1);
    int m = j.at("m").get<int>();

    if (j.contains("critical") || j.contains("groups")) {
        SymmetricProfile sp;
        sp.m = m;
        for (const auto& c : j.at("critical")) sp.critical.push_back(c.get<CandidateId>());
        for (const auto& g : j.at("groups")) {
            SymmetricGroup grp;
            grp.weight = rational_from_json(g.at("weight"));
            grp.placed.assign(sp.critical.size(), 0);
            for (auto it = g.at("placed").begin(); it != g.at("placed").end(); ++it) {
                CandidateId c = std::stoi(it.key());
                int idx = sp.critical_index(c);
                if (idx < 0) throw ParseError("placed candidate is not critical");
                grp.placed[idx] = it.value().get<RankValue>();
            }
            sp.groups.push_back(std::move(grp));
        }
        if (j.contains("blocks")) {
            for (const auto& b : j.at("blocks")) {
                std::vector<CandidateId> ids;
                for (const auto& c : b.at("ids")) ids.push_back(c.get<CandidateId>());
                sp.blocks.push_back(std::move(ids));
                std::vector<RankSet> supports;
                for (const auto& gsup : b.at("supports")) {
                    std::vector<RankInterval> runs;
                    for (const auto& run : gsup)
                        runs.push_back({run.at(0).get<RankValue>(), run.at(1).get<RankValue>()});
                    supports.push_back(RankSet::from_intervals(std::move(runs)));
                }
                sp.block_supports.push_back(std::move(supports));
            }
        }
        try {
            sp.validate();
        } catch (const ArgError& e) {
            throw ParseError(e.what());
        }
        lp.symmetric_profile = std::move(sp);
        return lp;
    }

    std::vector<std::vector<CandidateId>> orders;
    for (const auto& v : j.at("voters")) {
        std::vector<CandidateId> order;
        for (const auto& c : v) order.push_back(c.get<CandidateId>());
        orders.push_back(std::move(order));
    }
    std::vector<Rational> weights;
    if (j.contains("weights"))
        for (const auto& w : j.at("weights")) weights.push_back(rational_from_json(w));
    try {
        lp.explicit_profile = PreferenceProfile::from_orders(m, orders, std::move(weights));
    } catch (const ArgError& e) {
        throw ParseError(e.what());
    }
    return lp;
}

}  // namespace

LoadedProfile parse_profile(const std::string& data, ProfileFormat fmt) {
    if (fmt == ProfileFormat::Auto) {
        for (char ch : data) {
            if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
            if (ch == '{') {
                fmt = ProfileFormat::Json;
            }
            break;
        }
        if (fmt == ProfileFormat::Auto)
            fmt = data.find(':') != std::string::npos || data.rfind("#", 0) == 0
                      ? ProfileFormat::PrefLib
                      : ProfileFormat::Text;
    }
    switch (fmt) {
        case ProfileFormat::Text:
            return parse_text(data);
        case ProfileFormat::PrefLib:
            return parse_preflib(data);
        case ProfileFormat::Json:
        case ProfileFormat::SymmetricJson: {
            json j;
            try {
                j = json::parse(data);
            } catch (const json::exception& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what());
            }
            return parse_json_profile(j);
        }
        default:
            throw ParseError("unknown profile format");
    }
}

LoadedProfile load_profile(const std::string& path, ProfileFormat fmt) {
    std::string data = read_file(path);
    if (fmt == ProfileFormat::Auto) {
        auto dot = path.rfind('.');
        std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        if (ext == "json") fmt = ProfileFormat::Json;
        if (ext == "soc" || ext == "toc" || ext == "soi") fmt = ProfileFormat::PrefLib;
    }
    return parse_profile(data, fmt);
}

std::string profile_to_text(const PreferenceProfile& profile, int s_default) {
    std::ostringstream os;
    os << profile.m << " " << profile.num_voters() << " " << s_default << "\n";
    for (int v = 0; v < profile.num_voters(); ++v) {
        if (profile.weighted()) os << "w=" << profile.weights[v].str() << " ";
        auto order = profile.voters[v].order();
        for (std::size_t i = 0; i < order.size(); ++i) os << (i ? " " : "") << order[i];
        os << "\n";
    }
    return os.str();
}

std::string profile_to_json(const PreferenceProfile& profile, int s_default) {
    json j;
    j["m"] = profile.m;
    j["s_default"] = s_default;
    json voters = json::array();
    for (const auto& v : profile.voters) voters.push_back(v.order());
    j["voters"] = std::move(voters);
    if (profile.weighted()) {
        json ws = json::array();
        for (const auto& w : profile.weights) ws.push_back(w.str());
        j["weights"] = std::move(ws);
    }
    return j.dump(2) + "\n";
}

std::string symmetric_to_json(const SymmetricProfile& sp, int s_default) {
    json j;
    j["m"] = sp.m;
    j["s_default"] = s_default;
    j["critical"] = sp.critical;
    json groups = json::array();
    for (const auto& g : sp.groups) {
        json jg;
        jg["weight"] = g.weight.str();
        json placed = json::object();
        for (std::size_t i = 0; i < sp.critical.size(); ++i)
            placed[std::to_string(sp.critical[i])] = g.placed[i];
        jg["placed"] = std::move(placed);
        groups.push_back(std::move(jg));
    }
    j["groups"] = std::move(groups);
    if (!sp.blocks.empty()) {
        json blocks = json::array();
        for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
            json jb;
            jb["ids"] = sp.blocks[b];
            json sup = json::array();
            for (const auto& rs : sp.block_supports[b]) {
                json runs = json::array();
                for (const auto& run : rs.runs()) runs.push_back({run.lo, run.hi});
                sup.push_back(std::move(runs));
            }
            jb["supports"] = std::move(sup);
            blocks.push_back(std::move(jb));
        }
        j["blocks"] = std::move(blocks);
    }
    return j.dump(2) + "\n";
}

void save_profile(const PreferenceProfile& profile, const std::string& path, ProfileFormat fmt,
                  int s_default) {
    if (fmt == ProfileFormat::Auto) {
        auto dot = path.rfind('.');
        fmt = dot != std::string::npos && path.substr(dot + 1) == "json" ? ProfileFormat::Json
                                                                         : ProfileFormat::Text;
    }
    if (fmt == ProfileFormat::Json)
        write_file_atomic(path, profile_to_json(profile, s_default));
    else if (fmt == ProfileFormat::Text)
        write_file_atomic(path, profile_to_text(profile, s_default));
    else
        throw ArgError("profiles are saved as text or JSON only");
}

void save_profile(const SymmetricProfile& sp, const std::string& path, int s_default) {
    write_file_atomic(path, symmetric_to_json(sp, s_default));
}

// --------------------------------------------------------------------------
// Cover instances
// --------------------------------------------------------------------------

CoverInstance parse_cover(const std::string& data) {
    std::istringstream in(data);
    std::string line;
    int line_no = 0;
    CoverInstance ci;
    bool have_head = false;
    int z = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto toks = tokenize(line);
        if (!have_head) {
            if (toks.size() != 3) throw ParseError("cover header needs 'n_u z k_c'", line_no);
            ci.universe = std::stoi(toks[0]);
            z = std::stoi(toks[1]);
            ci.budget = std::stoi(toks[2]);
            have_head = true;
            continue;
        }
        std::vector<int> set;
        for (const auto& t : toks) set.push_back(std::stoi(t));
        ci.sets.push_back(std::move(set));
    }
    if (!have_head) throw ParseError("empty cover file");
    if (static_cast<int>(ci.sets.size()) != z)
        throw ParseError("expected " + std::to_string(z) + " sets, found " +
                         std::to_string(ci.sets.size()));
    try {
        ci.validate();
    } catch (const ArgError& e) {
        throw ParseError(e.what());
    }
    return ci;
}

CoverInstance load_cover(const std::string& path) { return parse_cover(read_file(path)); }

std::string cover_to_text(const CoverInstance& cover) {
    std::ostringstream os;
    os << cover.universe << " " << cover.sets.size() << " " << cover.budget << "\n";
    for (const auto& s : cover.sets) {
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
        os << "\n";
    }
    return os.str();
}

// --------------------------------------------------------------------------
// Result serialization
// --------------------------------------------------------------------------

std::string trace_to_json(const SelectionTrace& trace) {
    json j;
    j["rule"] = trace.rule;
    j["k"] = trace.k;
    j["s"] = trace.s;
    json picks = json::array();
    for (const auto& p : trace.picks) {
        json jp;
        jp["candidate"] = p.candidate;
        if (p.dummy) jp["dummy"] = true;
        jp["score"] = p.score.str();
        jp["marginal"] = p.marginal.str();
        picks.push_back(std::move(jp));
    }
    j["picks"] = std::move(picks);
    return j.dump(2) + "\n";
}

std::string fractional_solution_to_json(const FractionalSolution& fs) {
    json j;
    j["y"] = fs.y;
    j["objective"] = fs.objective;
    j["objective_mean"] = fs.objective_mean;
    return j.dump(2) + "\n";
}

}  // namespace mwelect
