import math
import os
import tempfile
import unittest

from qsfrac import special_numbers
from qsfrac.errors import QsfracError
from qsfrac.web import create_app

HERE = os.path.dirname(os.path.abspath(__file__))


class RouteTests(unittest.TestCase):

    ############################
    #### setup and teardown ####
    ############################

    # executed prior to each test
    def setUp(self):
        app = create_app(HERE)
        app.config['TESTING'] = True
        app.config['DEBUG'] = False

        self.flask = app
        self.app = app.test_client()

        self.assertEqual(app.debug, False)
        self.assertEqual(app.config['MAX_DIGITS'], 4096)

    # executed after each test
    def tearDown(self):
        pass

    ###############
    #### tests ####
    ###############

    def test_encode_route(self):
        response = self.app.post('/encode', json={'q': ['1/3', '1/3', '1/3'], 'x': '1/2', 'n': 4})
        self.assertEqual(response.status_code, 200)
        payload = response.get_json()
        self.assertEqual(payload['command'], 'encode')
        self.assertEqual(payload['result']['digits'], [1, 1, 1, 1])
        self.assertEqual(payload['backend'], 'exact')

    def test_encode_respects_configured_cap(self):
        response = self.app.post('/encode', json={'q': ['1/2', '1/2'], 'x': '0', 'n': 5000})
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.get_json()['kind'], 'DomainError')

    def test_decode_periodic_route(self):
        response = self.app.post('/decode', json={'q': [0.3, 0.7], 'preperiod': [],
                                                  'period': [1]})
        self.assertEqual(response.status_code, 200)
        self.assertAlmostEqual(response.get_json()['result']['value'], 1.0, places=12)

    def test_decode_exact_value(self):
        response = self.app.post('/decode', json={'q': ['1/3', '1/3', '1/3'], 'digits': [1]})
        self.assertEqual(response.get_json()['result']['exact'], '1/3')

    def test_decode_echoes_system(self):
        response = self.app.post('/decode', json={'q': ['1/3', '1/3', '1/3'], 'digits': [1]})
        system = response.get_json()['result']['system']
        self.assertEqual(system['q'], ['1/3', '1/3', '1/3'])
        self.assertEqual(system['beta'], ['0', '1/3', '2/3'])
        self.assertEqual(system['s'], 3)
        self.assertEqual(system['backend'], 'exact')

    def test_decode_periodic_canonical_form(self):
        # 0.0(1)_2 and 0.1(0)_2 are both 1/2
        response = self.app.post('/decode', json={'q': ['1/2', '1/2'], 'preperiod': [0],
                                                  'period': [1]})
        result = response.get_json()['result']
        self.assertEqual(result['exact'], '1/2')
        self.assertEqual(result['canonical'], {'preperiod': [1], 'period': [0], 's': 2})

    def test_decode_rejects_empty_period(self):
        response = self.app.post('/decode', json={'q': ['1/2', '1/2'], 'period': []})
        self.assertEqual(response.status_code, 400)
        self.assertIn('period', response.get_json()['messages'])

    def test_decode_rejects_foreign_digit(self):
        response = self.app.post('/decode', json={'q': ['1/2', '1/2'], 'digits': [0, 2]})
        self.assertEqual(response.status_code, 400)
        self.assertIn('digits', response.get_json()['messages'])

    def test_decode_rejects_bad_weights(self):
        response = self.app.post('/decode', json={'q': ['1/2', '1/3'], 'digits': [0]})
        self.assertEqual(response.status_code, 400)
        self.assertIn('q', response.get_json()['messages'])

    def test_cylinder_route(self):
        response = self.app.post('/cylinder', json={'q': ['1/2', '1/2'], 'digits': [1, 1, 1]})
        result = response.get_json()['result']
        self.assertEqual(result['left'], '7/8')
        self.assertEqual(result['length'], '1/8')

    def test_construct_ak_uses_configured_seed(self):
        self.flask.config['FREE_DIGIT_SEED'] = 99
        digits = self.app.get('/construct/ak?n=60').get_json()['result']['digits']
        self.assertEqual(digits, list(special_numbers.named_stream('ak', seed=99).prefix(60)))
        self.assertNotEqual(digits, list(special_numbers.named_stream('ak', seed=7).prefix(60)))

    def test_be_dimension_route(self):
        response = self.app.post('/dim/be', json={'q': ['1/3', '1/3', '1/3'],
                                                  'tau': [0.5828, 0.2517, 0.1655]})
        self.assertEqual(response.status_code, 200)
        self.assertAlmostEqual(response.get_json()['result']['value'], 0.8733, delta=5e-4)

    def test_moran_route(self):
        response = self.app.post('/dim/moran', json={'q': ['1/3', '1/3', '1/3'],
                                                     'subset': [0, 2]})
        value = response.get_json()['result']['value']
        self.assertAlmostEqual(value, math.log(2) / math.log(3), delta=1e-12)

    def test_ak_route(self):
        response = self.app.get('/dim/ak/9')
        self.assertEqual(response.get_json()['result']['exact'], '9/10')

    def test_opt_routes(self):
        m1 = self.app.get('/opt/m1').get_json()['result']
        self.assertEqual(m1['tau'], [0.5, 0.5, 0.0])
        self.assertIn('log_3 2', m1['note'])
        m2 = self.app.get('/opt/m2').get_json()['result']
        self.assertEqual(m2['exact'], '0')

    def test_unknown_optimum(self):
        response = self.app.get('/opt/m7')
        self.assertEqual(response.status_code, 422)

    def test_construct_route(self):
        response = self.app.get('/construct/champernowne?n=16')
        self.assertEqual(response.get_json()['result']['digits'],
                         [1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1, 1, 2, 1])

    def test_construct_needs_count(self):
        response = self.app.get('/construct/cyclic')
        self.assertEqual(response.status_code, 400)
        self.assertIn('n', response.get_json()['messages'])

    def test_cubic_route(self):
        response = self.app.get('/cubic?coeffs=1,-6,11,-6')
        roots = response.get_json()['result']['roots']
        self.assertEqual(len(roots), 3)
        for root, expected in zip(roots, (1.0, 2.0, 3.0)):
            self.assertAlmostEqual(root, expected, places=9)

    def test_weight_mismatch_is_unprocessable(self):
        response = self.app.post('/encode', json={'q': [0.2, 0.3, 0.4], 'x': 0.1, 'n': 2})
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.get_json()['kind'], 'WeightSumMismatch')

    def test_malformed_body_is_bad_request(self):
        response = self.app.post('/encode', json={'q': ['1/2', '1/2']})
        self.assertEqual(response.status_code, 400)
        self.assertIn('x', response.get_json()['messages'])

    def test_unknown_route(self):
        response = self.app.get('/history/home/')
        self.assertEqual(response.status_code, 404)
        self.assertEqual(response.get_json()['error'], 'not found')

    def test_missing_config(self):
        with tempfile.TemporaryDirectory() as empty:
            with self.assertRaises(QsfracError):
                create_app(empty)


if __name__ == "__main__":
    unittest.main()
