#ifndef RA_VARIABLE_HPP
#define RA_VARIABLE_HPP

#include <compare>
#include <string>

namespace ra {

/// The three variable kinds guards can mention: markers v1, v2, ... for the
/// i-th input value of a symbolic word, named registers of an automaton, and
/// the input parameter p.
enum class VarKind { Marker, Register, Param };

class Variable {
public:
    /// Defaults to the parameter p.
    Variable() : kind_(VarKind::Param) {}

    static Variable marker(int index);
    static Variable reg(std::string name);
    static Variable param();

    VarKind kind() const { return kind_; }
    int marker_index() const { return index_; }
    const std::string& reg_name() const { return name_; }

    bool is_marker() const { return kind_ == VarKind::Marker; }
    bool is_register() const { return kind_ == VarKind::Register; }
    bool is_param() const { return kind_ == VarKind::Param; }

    /// "v3", "x", "p"
    std::string str() const;

    friend bool operator==(const Variable& a, const Variable& b) = default;
    friend std::strong_ordering operator<=>(const Variable& a, const Variable& b)
    {
        if (a.kind_ != b.kind_)
            return a.kind_ <=> b.kind_;
        if (a.kind_ == VarKind::Marker)
            return a.index_ <=> b.index_;
        return a.name_ <=> b.name_;
    }

private:
    Variable(VarKind kind, int index, std::string name)
        : kind_(kind), index_(index), name_(std::move(name)) {}

    VarKind kind_;
    int index_ = 0;    // markers only, >= 1
    std::string name_; // registers only
};

} // namespace ra

#endif
