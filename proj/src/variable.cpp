#include "ra/variable.hpp"

#include "ra/errors.hpp"

#include <cassert>

namespace ra {

Variable Variable::marker(int index)
{
    assert(index >= 1 && "marker indices start at 1");
    return Variable(VarKind::Marker, index, {});
}

Variable Variable::reg(std::string name)
{
    assert(!name.empty());
    return Variable(VarKind::Register, 0, std::move(name));
}

Variable Variable::param()
{
    return Variable(VarKind::Param, 0, {});
}

std::string Variable::str() const
{
    switch (kind_) {
    case VarKind::Marker:
        return "v" + std::to_string(index_);
    case VarKind::Register:
        return name_;
    case VarKind::Param:
        return "p";
    }
    return {};
}

} // namespace ra
