from rest_framework import serializers

from hermitian_lattices.serializers import HermitianMatrixSerializer

from .polynomials import ROUTES


class SiegelRequestSerializer(serializers.Serializer):
    """A Siegel series request for T stored in \\tilde Her_m(O_p)"""
    T = HermitianMatrixSerializer()
    route = serializers.ChoiceField(choices=ROUTES, default='auto')
    order = serializers.IntegerField(min_value=0, max_value=8, default=4)
    andrianov = serializers.BooleanField(default=False)
    expansion = serializers.BooleanField(default=False)

    def validate_T(self, value):
        if 'p' not in value:
            raise serializers.ValidationError("T needs the prime p")
        return value


class FunctionalEquationSerializer(serializers.Serializer):
    equation = serializers.CharField()
    holds = serializers.BooleanField()


class SiegelReportSerializer(serializers.Serializer):
    T = serializers.DictField()
    F = serializers.CharField()
    tilde_F = serializers.CharField()
    ord_gamma = serializers.IntegerField()
    route = serializers.CharField()
    depths = serializers.ListField(child=serializers.IntegerField())
    G = serializers.CharField()
    G_closed = serializers.CharField(allow_null=True)
    tilde_G = serializers.CharField()
    B = serializers.CharField()
    B_exact = serializers.BooleanField()
    B_closed = serializers.CharField(allow_null=True)
    functional_equations = FunctionalEquationSerializer(many=True)
    S = serializers.CharField(required=False)
    g_expansion = serializers.DictField(required=False)
