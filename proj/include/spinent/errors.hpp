#ifndef SPINENT_ERRORS_HPP
#define SPINENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinent {

/// A requested computation exceeds a configured work or memory budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to converge or produced an ill-conditioned result.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// A measure fails its normalization invariant; carries the measured deficit.
class normalization_error : public std::runtime_error {
public:
    normalization_error(const std::string& what, double deficit)
        : std::runtime_error(what), deficit_(deficit) {}
    double deficit() const { return deficit_; }

private:
    double deficit_;
};

} // namespace spinent

#endif
