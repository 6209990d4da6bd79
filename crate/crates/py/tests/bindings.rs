use pyo3::prelude::*;
use thh::thh as thh_module;

fn run(code: &std::ffi::CStr) {
    pyo3::append_to_inittab!(thh_module);
    Python::attach(|py| {
        if let Err(e) = py.run(code, None, None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn module_round_trip() {
    run(c"
import json
import thh

a = thh.alpha(3, 4)
assert a.residue % 3 == 1 and a.precision == 4
x = thh.PadicInt(5, 3, 7)
assert int(x * x.invert()) == 1
assert repr(thh.PadicInt(5, 3, -1)) == 'PadicInt(5, 3, -1)'

s = thh.Series.parse('(1 - x)^2', 3, 4, 3)
assert thh.rezk_log(s).coefficients() == [0, 0, 0]
assert thh.Series.from_json(s.to_json()) == s
u = thh.solve_unit(thh.Series(3, 4, 3, []), line=1)
assert u.coefficients() == [1, -1, 0]
assert thh.adams_operation(2, thh.Series(5, 3, 3, [0, 1])).coefficients() == [0, 2, -1]

assert json.loads(thh.torsion_rank(3, example='worked'))['rank'] == 2
assert json.loads(thh.torsion_rank(5, summands=[(2, 1)]))['rank'] == 2

for bad, exc in [(lambda: thh.solve_unit(thh.Series(3, 4, 3, [0, 1])), thh.NotInImageError),
                 (lambda: thh.PadicInt(4, 2, 1), thh.ThhError),
                 (lambda: thh.PadicInt(3, 2, 3).invert(), ZeroDivisionError)]:
    try:
        bad()
    except exc:
        pass
    else:
        raise AssertionError(exc)
");
}
