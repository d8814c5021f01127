#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace etopo {

enum class NodeId : std::uint32_t {};
enum class LinkId : std::uint32_t {};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(LinkId id) { return static_cast<std::uint32_t>(id); }

enum class Errc {
  invalid_level,
  invalid_argument,
  not_found,
  too_small_lattice,
  placement,
  no_contacts,
  not_connected,
  dimension_mismatch,
  unmapped,
  too_large,
  config,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace etopo

template <>
struct std::hash<etopo::NodeId> {
  std::size_t operator()(etopo::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(etopo::raw(id));
  }
};

template <>
struct std::hash<etopo::LinkId> {
  std::size_t operator()(etopo::LinkId id) const noexcept {
    return std::hash<std::uint32_t>{}(etopo::raw(id));
  }
};
