#pragma once

#include <optional>
#include <string>

#include "mwelect/instance_gen.hpp"
#include "mwelect/lp.hpp"
#include "mwelect/profile.hpp"
#include "mwelect/selection.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

enum class ProfileFormat { Auto, Text, Json, PrefLib, SymmetricJson };

// Either an explicit or a symmetric profile, plus the file's default s.
struct LoadedProfile {
    std::optional<PreferenceProfile> explicit_profile;
    std::optional<SymmetricProfile> symmetric_profile;
    int s_default = 1;

    bool is_symmetric() const { return symmetric_profile.has_value(); }
    int m() const;
};

LoadedProfile load_profile(const std::string& path, ProfileFormat fmt = ProfileFormat::Auto);
LoadedProfile parse_profile(const std::string& data, ProfileFormat fmt);

// Text: first line "m n s_default"; one voter per line, ids in decreasing
// preference, optional leading w=<weight>.
std::string profile_to_text(const PreferenceProfile& profile, int s_default = 1);
std::string profile_to_json(const PreferenceProfile& profile, int s_default = 1);
std::string symmetric_to_json(const SymmetricProfile& sp, int s_default = 1);

void save_profile(const PreferenceProfile& profile, const std::string& path,
                  ProfileFormat fmt = ProfileFormat::Text, int s_default = 1);
void save_profile(const SymmetricProfile& sp, const std::string& path, int s_default = 1);

// Cover instances: first line "n_u z k_c", then one line of element ids per set.
CoverInstance parse_cover(const std::string& data);
CoverInstance load_cover(const std::string& path);
std::string cover_to_text(const CoverInstance& cover);

std::string trace_to_json(const SelectionTrace& trace);
std::string fractional_solution_to_json(const FractionalSolution& fs);

// Whole-file helpers; writes go through a temp file and rename.
std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mwelect
