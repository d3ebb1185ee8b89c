from fractions import Fraction

from django.test import SimpleTestCase

from gaudinlab.gaudin import GaudinConfig
from gaudinlab.serializers import ExactScalarField, GaudinConfigSerializer, RepBuildSerializer


def sl2_data(**kwargs):
    data = {'algebra': {'type': 'A', 'rank': 1}, 'weights': [[1], [1]], 'z': ['1', '2']}
    data.update(kwargs)
    return data


class ExactScalarFieldTests(SimpleTestCase):

    def test_parse(self):
        ''' Test integers and rational strings are accepted, floats are not. '''
        field = ExactScalarField()
        self.assertEqual(field.run_validation("-3/6"), Fraction(-1, 2))
        self.assertEqual(field.run_validation(4), Fraction(4))
        self.assertEqual(field.to_representation(Fraction(2, 4)), '1/2')
        for bad in [0.5, "x", "1/0"]:
            with self.assertRaisesRegex(Exception, "Not an exact rational scalar"):
                field.run_validation(bad)


class GaudinConfigSerializerTests(SimpleTestCase):

    def test_valid(self):
        ''' Test a valid configuration builds a GaudinConfig with defaults. '''
        serializer = GaudinConfigSerializer(data=sl2_data())
        self.assertTrue(serializer.is_valid(), serializer.errors)
        config = serializer.save()
        self.assertIsInstance(config, GaudinConfig)
        self.assertEqual(config.form, 'killing')
        self.assertEqual(config.mode, 'periodic')
        self.assertEqual(config.z, [Fraction(1), Fraction(2)])
        self.assertTrue(config.include_cartan)

    def test_lengths(self):
        ''' Test weight and evaluation point counts. '''
        serializer = GaudinConfigSerializer(data=sl2_data(z=['1']))
        self.assertFalse(serializer.is_valid())
        self.assertIn('z', serializer.errors)
        serializer = GaudinConfigSerializer(data=sl2_data(weights=[[1, 0], [1]]))
        self.assertFalse(serializer.is_valid())
        self.assertIn('weights', serializer.errors)

    def test_distinct_points(self):
        ''' Test equal rationals written differently are caught. '''
        serializer = GaudinConfigSerializer(data=sl2_data(z=['1/2', '2/4']))
        self.assertFalse(serializer.is_valid())
        self.assertIn("pairwise distinct", str(serializer.errors['z']))

    def test_algebra(self):
        ''' Test unknown types and invalid ranks. '''
        serializer = GaudinConfigSerializer(data=sl2_data(algebra={'type': 'G', 'rank': 3}))
        self.assertFalse(serializer.is_valid())
        self.assertIn('rank', serializer.errors['algebra'])
        serializer = GaudinConfigSerializer(data=sl2_data(algebra={'type': 'Z', 'rank': 1}))
        self.assertFalse(serializer.is_valid())
        self.assertIn('type', serializer.errors['algebra'])
        serializer = GaudinConfigSerializer(data=sl2_data(algebra={'type': 'A', 'rank': 1, 'form': 'trace'}))
        self.assertFalse(serializer.is_valid())

    def test_checks(self):
        ''' Test unknown check names are rejected. '''
        serializer = GaudinConfigSerializer(data=sl2_data(checks={'commutativity': False, 'spectral': True}))
        self.assertFalse(serializer.is_valid())
        self.assertIn("spectral", str(serializer.errors['checks']))

    def test_extra_generators(self):
        ''' Test current monomials are lists of [label, s] pairs with s >= 0. '''
        serializer = GaudinConfigSerializer(data=sl2_data(extra_generators=[[['h1', 0], ['e1', 2]]]))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().extra_generators, [[('h1', 0), ('e1', 2)]])
        for bad in [[[['h1', -1]]], [[]], [[['h1']]]]:
            serializer = GaudinConfigSerializer(data=sl2_data(extra_generators=bad))
            self.assertFalse(serializer.is_valid())
            self.assertIn('extra_generators', serializer.errors)

    def test_model_errors(self):
        ''' Test errors raised while building the model keep their field path. '''
        serializer = GaudinConfigSerializer(data=sl2_data(mode='general', mu={'f': {'e1': '1'}}))
        self.assertFalse(serializer.is_valid())
        self.assertIn('mu.f', serializer.errors)
        serializer = GaudinConfigSerializer(data=sl2_data(mode='regular', mu={'h': ['0']}))
        self.assertFalse(serializer.is_valid())
        self.assertIn("not regular", str(serializer.errors['mu']))

    def test_zero_point(self):
        ''' Test z = 0 needs the explicit override. '''
        self.assertFalse(GaudinConfigSerializer(data=sl2_data(z=['0', '1'])).is_valid())
        with self.assertLogs('gaudinlab.gaudin', level='WARNING'):
            self.assertTrue(GaudinConfigSerializer(data=sl2_data(z=['0', '1'], allow_zero_z=True)).is_valid())


class RepBuildSerializerTests(SimpleTestCase):

    def test_weight_length(self):
        ''' Test the highest weight has one coordinate per simple root. '''
        serializer = RepBuildSerializer(data={'type': 'B', 'rank': 2, 'weight': [1]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('weight', serializer.errors)
        serializer = RepBuildSerializer(data={'type': 'B', 'rank': 2, 'weight': [1, 0], 'form': 'normalized'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
