from rest_framework import serializers

from hermitian_lattices.serializers import HermitianMatrixSerializer, RationalField

from .counting import KINDS


class DensityRequestSerializer(serializers.Serializer):
    """A density request: S, optionally T, at a prime p given inside the matrices"""
    kind = serializers.ChoiceField(choices=KINDS + ('alpha_partial', 'alpha_fast'))
    S = HermitianMatrixSerializer()
    T = HermitianMatrixSerializer(required=False)
    stratum = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False, min_length=1, max_length=2)
    start = serializers.IntegerField(min_value=0, required=False)
    halved = serializers.BooleanField(default=False)

    def validate_S(self, value):
        if 'p' not in value:
            raise serializers.ValidationError("S needs the prime p")
        return value

    def validate(self, data):
        T = data.get('T')
        if T is not None and (T['D'], T.get('p', data['S']['p'])) != (data['S']['D'], data['S']['p']):
            raise serializers.ValidationError("S and T must share D and p")
        if data['kind'] == 'beta' and T is None:
            raise serializers.ValidationError("beta needs T")
        if data['kind'] == 'alpha_partial' and 'stratum' not in data:
            raise serializers.ValidationError("alpha_partial needs a stratum")
        return data


class DensityValueSerializer(serializers.Serializer):
    kind = serializers.CharField()
    value = RationalField()
    level_used = serializers.IntegerField()
    raw_counts = serializers.ListField(child=serializers.CharField())
    counting_levels = serializers.ListField(child=serializers.IntegerField())
    lifted = serializers.BooleanField()
    method = serializers.CharField()
    stratum = serializers.JSONField(allow_null=True)
    context = serializers.CharField()


class CheckReportSerializer(serializers.Serializer):
    check = serializers.CharField()
    passed = serializers.BooleanField()
    lhs = RationalField()
    rhs = RationalField()
    details = serializers.DictField()
