use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(frobsum_py::frobsum_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("fs", module).unwrap();
        f(py, &globals)
    })
}

fn eval<'py>(py: Python<'py>, globals: &Bound<'py, PyDict>, code: &str) -> Bound<'py, PyAny> {
    let code = std::ffi::CString::new(code).unwrap();
    py.eval(&code, Some(globals), None).unwrap()
}

#[test]
fn big_constants_become_python_ints() {
    with_module(|py, g| {
        let v: String = eval(py, g, "str(fs.comparison_tables(5, [20])[1]['c_value'])").extract().unwrap();
        assert_eq!(v, "1356608411506872363943501");
        let c: u64 = eval(py, g, "fs.c_constant(5, 10)").extract().unwrap();
        assert_eq!(c, 1360);
    });
}

#[test]
fn field_arithmetic_through_python() {
    with_module(|py, g| {
        let ok: bool = eval(py, g, "all(fs.FiniteField(2, 3).pow(a, 8) == a for a in fs.FiniteField(2, 3).elements())")
            .extract()
            .unwrap();
        assert!(ok);
        let r: String = eval(py, g, "repr(fs.Tower(5, 1, 2))").extract().unwrap();
        assert_eq!(r, "Tower(p=5, n=1, r=2)");
    });
}

#[test]
fn records_match_the_cli_keys() {
    with_module(|py, g| {
        let keys: Vec<String> = eval(py, g, "sorted(fs.count_points('se', 3, 1, 2, '2,0,1').keys())").extract().unwrap();
        for k in ["N", "bound", "bound_status", "delta", "generic", "identity_ok", "main_term"] {
            assert!(keys.iter().any(|x| x == k), "missing {k}");
        }
    });
}

#[test]
fn errors_surface_as_value_error() {
    with_module(|py, g| {
        let code = std::ffi::CString::new("fs.restricted_sums(3, 1, 2, '0,0,1', mode='bogus')").unwrap();
        let e = py.eval(&code, Some(g), None).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}
