use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(script: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(parakahler::parakahler)(py);
        let globals = PyDict::new(py);
        globals.set_item("pk", module).unwrap();
        if let Err(e) = py.run(script, Some(&globals), None) {
            e.print(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn g2_koszul_and_rho() {
    run(c"
from fractions import Fraction
g = pk.Gradation('G', 2, [1])
assert g.koszul_form() == [20, 10]
assert g.koszul_form_pi() == [10, 0]
assert all(isinstance(x, Fraction) for x in g.koszul_form())
rho = g.rho()
assert rho[(0, 1)] == 0 and rho[(2, 1)] == 20
assert g.kernel_is_g0()
assert g.einstein_signature() == (5, 5, 0)
");
}

#[test]
fn sl2h_and_root_system() {
    run(c"
rs = pk.RootSystem('A', 3)
assert rs.dimension == 15 and len(rs.positive_roots()) == 6
g = pk.Gradation('A', 3, [2])
assert g.koszul_coefficients() == {2: (4, 2)}
assert g.satake_consistent('sl2H')
assert not pk.Gradation('A', 3, [1]).satake_consistent('sl2H')
try:
    pk.Gradation('A', 3, [4])
    raise AssertionError('accepted node 4')
except ValueError:
    pass
");
}

#[test]
fn paracomplex_and_numerics() {
    run(c"
z = pk.ParaComplex(1.0, 2.0) * pk.ParaComplex(3.0, 1.0)
assert (z.re, z.im) == (5.0, 7.0)
try:
    pk.ParaComplex(1.0, 1.0).inverse()
    raise AssertionError('inverted a null element')
except ZeroDivisionError:
    pass
assert pk.log_model_residual() < 1e-5
assert all(p == t for p, t in pk.verify(2).values())
import json
assert json.loads(pk.report_json(['koszul', 'G', '2', '--cross', '1']))['schema'] == 'parakahler.report/1'
");
}
