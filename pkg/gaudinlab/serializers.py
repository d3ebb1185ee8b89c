"""
Serializers validating configuration input and rendering verdicts.
"""
from django.conf import settings
from rest_framework import serializers

from gaudinlab.exceptions import ConfigError, LinearAlgebraError, RootSystemError
from gaudinlab.gaudin import GaudinConfig
from gaudinlab.lie.roots import RootSystem
from gaudinlab.linalg import format_scalar, parse_scalar


class ExactScalarField(serializers.Field):
    """
    Exact rational scalar given as an integer or a "p/q" / "p" string and rendered
    as its canonical string.
    """
    default_error_messages = {
        'invalid': 'Not an exact rational scalar: "{value}".'
    }

    def to_representation(self, obj):
        return format_scalar(obj)

    def to_internal_value(self, data):
        if isinstance(data, float):
            self.fail('invalid', value=data)
        try:
            return parse_scalar(data)
        except LinearAlgebraError:
            self.fail('invalid', value=data)


class AlgebraSerializer(serializers.Serializer):
    """ Finite type, rank and invariant form normalization. """
    type = serializers.ChoiceField(choices=list(settings.ALLOWED_TYPES.keys()))
    rank = serializers.IntegerField(min_value=1)
    form = serializers.ChoiceField(choices=settings.FORM_NORMALIZATIONS, default=settings.DEFAULT_FORM)

    def validate(self, attrs):
        try:
            RootSystem.validate(attrs['type'], attrs['rank'])
        except RootSystemError as e:
            raise serializers.ValidationError({'rank': e.detail['Root System Error']})
        return attrs


class MuSerializer(serializers.Serializer):
    """ Twist: coordinates on h_1..h_r and on lowering basis elements. """
    h = serializers.ListField(child=ExactScalarField(), required=False, default=list)
    f = serializers.DictField(child=ExactScalarField(), required=False, default=dict)


class CurrentMonomialField(serializers.Field):
    """ Current monomial given as a list of [basis label, derivative order] pairs. """
    default_error_messages = {
        'invalid': 'Expected a non-empty list of [label, s] pairs with s >= 0.'
    }

    def to_representation(self, obj):
        return [[label, s] for label, s in obj]

    def to_internal_value(self, data):
        if not isinstance(data, list) or not data:
            self.fail('invalid')
        out = []
        for pair in data:
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2 or not isinstance(pair[0], str) or
                    not isinstance(pair[1], int) or isinstance(pair[1], bool) or pair[1] < 0):
                self.fail('invalid')
            out.append((pair[0], pair[1]))
        return out


class GaudinConfigSerializer(serializers.Serializer):
    """ Gaudin model configuration file. """
    algebra = AlgebraSerializer()
    weights = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
                                    min_length=1)
    z = serializers.ListField(child=ExactScalarField(), min_length=1)
    mu = MuSerializer(required=False)
    mode = serializers.ChoiceField(choices=settings.GAUDIN_MODES, default='periodic')
    include_cartan = serializers.BooleanField(required=False, allow_null=True, default=None)
    extra_generators = serializers.ListField(child=CurrentMonomialField(), required=False, default=list)
    checks = serializers.DictField(child=serializers.BooleanField(), required=False, default=dict)
    allow_zero_z = serializers.BooleanField(required=False, default=False)

    def validate_z(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError("Evaluation points must be pairwise distinct: " +
                                              ", ".join(format_scalar(x) for x in value))
        return value

    def validate_checks(self, value):
        unknown = [k for k in value if k not in settings.VERDICT_CHECKS]
        if unknown:
            raise serializers.ValidationError("Unknown checks: " + ", ".join(sorted(unknown)))
        return value

    def validate(self, attrs):
        rank = attrs['algebra']['rank']
        errors = {}
        for a, w in enumerate(attrs['weights']):
            if len(w) != rank:
                errors['weights'] = ("Weight " + str(a + 1) + " has " + str(len(w)) + " coordinates, expected " +
                                     str(rank))
        if len(attrs['z']) != len(attrs['weights']):
            errors['z'] = ("Expected " + str(len(attrs['weights'])) + " evaluation points, found " +
                           str(len(attrs['z'])))
        if errors:
            raise serializers.ValidationError(errors)
        try:
            self._config = self._build(attrs)
        except ConfigError as e:
            raise serializers.ValidationError(e.detail['Config Error'])
        return attrs

    @classmethod
    def _build(cls, attrs):
        alg = attrs['algebra']
        mu = attrs.get('mu') or {}
        return GaudinConfig(alg['type'], alg['rank'], attrs['weights'], attrs['z'],
                            mu={'h': mu.get('h', []), 'f': mu.get('f', {})}, form=alg['form'],
                            mode=attrs['mode'], include_cartan=attrs['include_cartan'],
                            extra_generators=attrs['extra_generators'], checks=attrs['checks'],
                            allow_zero_z=attrs['allow_zero_z'])

    def create(self, validated_data):
        return self._config


class RepBuildSerializer(serializers.Serializer):
    """ Arguments of a representation build. """
    type = serializers.ChoiceField(choices=list(settings.ALLOWED_TYPES.keys()))
    rank = serializers.IntegerField(min_value=1)
    weight = serializers.ListField(child=serializers.IntegerField(min_value=0))
    form = serializers.ChoiceField(choices=settings.FORM_NORMALIZATIONS, default=settings.DEFAULT_FORM)

    def validate(self, attrs):
        try:
            RootSystem.validate(attrs['type'], attrs['rank'])
        except RootSystemError as e:
            raise serializers.ValidationError({'rank': e.detail['Root System Error']})
        if len(attrs['weight']) != attrs['rank']:
            raise serializers.ValidationError({'weight': "Expected " + str(attrs['rank']) + " coordinates, found " +
                                               str(len(attrs['weight']))})
        return attrs


class VerdictSerializer(serializers.Serializer):
    """ Perfect integrability verdict of a Gaudin configuration. """
    config_digest = serializers.CharField(read_only=True)
    config = serializers.DictField(read_only=True)
    version = serializers.CharField(read_only=True)
    seed = serializers.IntegerField(read_only=True)
    form_normalization = serializers.CharField(read_only=True)
    mode = serializers.CharField(read_only=True)
    convention = serializers.CharField(read_only=True)
    generator_set = serializers.CharField(read_only=True)
    algebra_scope = serializers.CharField(read_only=True)
    generators = serializers.ListField(read_only=True)
    dims = serializers.DictField(read_only=True)
    commutative = serializers.JSONField(read_only=True)
    chain_space = serializers.DictField(read_only=True)
    cyclic = serializers.DictField(read_only=True)
    frobenius = serializers.DictField(read_only=True)
    probe = serializers.DictField(read_only=True)
    eigen = serializers.DictField(read_only=True)
    checks = serializers.DictField(read_only=True)
    cross_checks = serializers.ListField(read_only=True)
    perfectly_integrable = serializers.BooleanField(read_only=True)
    passed = serializers.BooleanField(read_only=True)
    timings_ms = serializers.DictField(read_only=True, required=False)
